#include <conlab/fo_text.hpp>

#include <cctype>

namespace conlab::fo_text {

using namespace conlab::fo;

// --- printing ----------------------------------------------------------------

namespace {

struct Printer {
    std::string out;
    size_t cap;
    bool display = false;

    void emit(std::string_view s) {
        if (out.size() + s.size() > cap) throw ResourceError("rendering exceeds the print cap");
        out += s;
    }

    void term(const TermPtr& t) {
        switch (t->kind) {
            case TermKind::Zero: emit("0"); return;
            case TermKind::Variable: emit("x" + std::to_string(t->var)); return;
            case TermKind::Succ: {
                if (t->succ_run.is_code_marker()) {
                    if (!display)
                        throw ResourceError("unmaterialized numeral has no rendering");
                    bool on_zero = t->a->kind == TermKind::Zero;
                    bool offset = t->succ_run.marker_offset() != 0;
                    if (!on_zero || offset) emit("(");
                    emit("quote[");
                    formula(t->succ_run.marked_formula());
                    emit("]");
                    if (offset) {
                        emit("+");
                        emit(t->succ_run.marker_offset().str());
                    }
                    if (!on_zero) {
                        emit("+");
                        term(t->a);
                    }
                    if (!on_zero || offset) emit(")");
                    return;
                }
                const BigNat& run = t->succ_run.value();
                if (display && run > 12) {
                    bool on_zero = t->a->kind == TermKind::Zero;
                    if (!on_zero) emit("(");
                    emit(run.str());
                    if (!on_zero) {
                        emit("+");
                        term(t->a);
                        emit(")");
                    }
                    return;
                }
                if (run > BigNat(cap / 2)) throw ResourceError("rendering exceeds the print cap");
                size_t n = static_cast<size_t>(run);
                for (size_t i = 0; i < n; ++i) emit("S(");
                term(t->a);
                for (size_t i = 0; i < n; ++i) emit(")");
                return;
            }
            case TermKind::Sum:
            case TermKind::Product: {
                emit("(");
                term(t->a);
                emit(t->kind == TermKind::Sum ? "+" : "*");
                term(t->b);
                emit(")");
                return;
            }
            case TermKind::Exp:
                emit("exp(");
                term(t->a);
                emit(",");
                term(t->b);
                emit(")");
                return;
        }
    }

    void formula(const FormulaPtr& f) {
        switch (f->kind) {
            case FormulaKind::Equal:
            case FormulaKind::Less:
                term(f->ta);
                emit(f->kind == FormulaKind::Equal ? "=" : "<");
                term(f->tb);
                return;
            case FormulaKind::Bottom: emit("bot"); return;
            case FormulaKind::Top: emit("top"); return;
            case FormulaKind::Not:
                emit("~");
                formula(f->fa);
                return;
            case FormulaKind::And:
            case FormulaKind::Or:
            case FormulaKind::Implies: {
                emit("(");
                formula(f->fa);
                emit(f->kind == FormulaKind::And ? " & " : f->kind == FormulaKind::Or ? " | " : " -> ");
                formula(f->fb);
                emit(")");
                return;
            }
            case FormulaKind::ForAll:
            case FormulaKind::Exists:
                emit(f->kind == FormulaKind::ForAll ? "forall x" : "exists x");
                emit(std::to_string(f->var));
                emit(" ");
                formula(f->fa);
                return;
            case FormulaKind::BoundedForAll:
            case FormulaKind::BoundedExists:
                emit(f->kind == FormulaKind::BoundedForAll ? "forall x" : "exists x");
                emit(std::to_string(f->var));
                emit(" < ");
                term(f->ta);
                emit(" ");
                formula(f->fa);
                return;
        }
    }
};

} // namespace

std::string print(const TermPtr& t, size_t max_chars) {
    Printer p;
    p.cap = max_chars;
    p.term(t);
    return std::move(p.out);
}

std::string print(const FormulaPtr& f, size_t max_chars) {
    Printer p;
    p.cap = max_chars;
    p.formula(f);
    return std::move(p.out);
}

std::string print_display(const TermPtr& t, size_t max_chars) {
    Printer p;
    p.cap = max_chars;
    p.display = true;
    p.term(t);
    return std::move(p.out);
}

std::string print_display(const FormulaPtr& f, size_t max_chars) {
    Printer p;
    p.cap = max_chars;
    p.display = true;
    p.formula(f);
    return std::move(p.out);
}

// --- parsing -----------------------------------------------------------------

namespace {

struct Parser {
    std::string_view text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& what) { throw ParseError(what, pos); }

    bool try_consume(std::string_view tok) {
        skip_ws();
        if (text.substr(pos, tok.size()) != tok) return false;
        // keywords must not run into a longer identifier
        if (std::isalpha(static_cast<unsigned char>(tok.back()))) {
            size_t after = pos + tok.size();
            if (after < text.size() &&
                (std::isalnum(static_cast<unsigned char>(text[after])) || text[after] == '_'))
                return false;
        }
        pos += tok.size();
        return true;
    }

    void consume(std::string_view tok) {
        if (!try_consume(tok)) fail("expected '" + std::string(tok) + "'");
    }

    uint32_t var_index() {
        skip_ws();
        if (pos >= text.size() || text[pos] != 'x') fail("expected a variable");
        size_t start = ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected a variable index");
        if (pos - start > 9) fail("variable index out of range");
        return static_cast<uint32_t>(std::stoul(std::string(text.substr(start, pos - start))));
    }

    TermPtr term() {
        skip_ws();
        if (try_consume("0")) return zero();
        if (try_consume("S")) {
            consume("(");
            TermPtr inner = term();
            consume(")");
            return succ(std::move(inner));
        }
        if (try_consume("exp")) {
            consume("(");
            TermPtr a = term();
            consume(",");
            TermPtr b = term();
            consume(")");
            return exp(std::move(a), std::move(b));
        }
        if (try_consume("(")) {
            TermPtr a = term();
            skip_ws();
            if (try_consume("+")) {
                TermPtr b = term();
                consume(")");
                return sum(std::move(a), std::move(b));
            }
            consume("*");
            TermPtr b = term();
            consume(")");
            return product(std::move(a), std::move(b));
        }
        return variable(var_index());
    }

    FormulaPtr quantifier(bool universal) {
        uint32_t v = var_index();
        skip_ws();
        if (try_consume("<")) {
            TermPtr bound = term();
            FormulaPtr body = formula();
            return universal ? bounded_forall(v, std::move(bound), std::move(body))
                             : bounded_exists(v, std::move(bound), std::move(body));
        }
        FormulaPtr body = formula();
        return universal ? forall(v, std::move(body)) : exists(v, std::move(body));
    }

    FormulaPtr formula() {
        skip_ws();
        if (try_consume("bot")) return bottom();
        if (try_consume("top")) return top();
        if (try_consume("~")) return lnot(formula());
        if (try_consume("forall")) return quantifier(true);
        if (try_consume("exists")) return quantifier(false);
        if (try_consume("(")) {
            // a '(' opens either a connective or a parenthesized term; decide
            // by attempting a term followed by one of + * at this depth
            size_t save = pos;
            bool term_like = false;
            try {
                (void)term();
                skip_ws();
                term_like = pos < text.size() && (text[pos] == '+' || text[pos] == '*');
            } catch (const ParseError&) {
                term_like = false;
            }
            pos = save - 1; // back onto the '('
            if (term_like) {
                TermPtr a = term();
                return atom_tail(std::move(a));
            }
            ++pos;
            FormulaPtr a = formula();
            skip_ws();
            FormulaKind k;
            if (try_consume("&")) k = FormulaKind::And;
            else if (try_consume("->")) k = FormulaKind::Implies;
            else if (try_consume("|")) k = FormulaKind::Or;
            else fail("expected a connective");
            FormulaPtr b = formula();
            consume(")");
            return k == FormulaKind::And ? land(std::move(a), std::move(b))
                 : k == FormulaKind::Or  ? lor(std::move(a), std::move(b))
                                         : implies(std::move(a), std::move(b));
        }
        return atom_tail(term());
    }

    FormulaPtr atom_tail(TermPtr a) {
        skip_ws();
        if (try_consume("=")) return equal(std::move(a), term());
        if (try_consume("<")) return less(std::move(a), term());
        fail("expected '=' or '<'");
    }
};

} // namespace

TermPtr parse_term(std::string_view text) {
    Parser p{text};
    TermPtr t = p.term();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return t;
}

FormulaPtr parse_formula(std::string_view text) {
    Parser p{text};
    FormulaPtr f = p.formula();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return f;
}

} // namespace conlab::fo_text
