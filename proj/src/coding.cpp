#include <conlab/coding.hpp>

#include <map>

namespace conlab::coding {

using namespace conlab::fo;

BigNat pair(const BigNat& a, const BigNat& b) {
    BigNat s = a + b;
    return s * (s + 1) / 2 + b;
}

std::pair<BigNat, BigNat> unpair(const BigNat& z) {
    BigNat disc = 8 * z + 1;
    BigNat s = (boost::multiprecision::sqrt(disc) - 1) / 2;
    BigNat t = s * (s + 1) / 2;
    BigNat b = z - t;
    return {s - b, b};
}

// --- encoding ----------------------------------------------------------------

namespace {

unsigned bit_len(const BigNat& v) {
    return v == 0 ? 0u : static_cast<unsigned>(boost::multiprecision::msb(v)) + 1u;
}

struct Encoder {
    std::map<const void*, BigNat> memo;

    BigNat capped_pair(unsigned tag, const BigNat& payload) {
        // s(s+1)/2 has at least 2*bits(s)-2 bits, so this aborts before the
        // expensive square whenever the result is certain to land past the
        // floor anyway
        BigNat s = tag + payload;
        if (bit_len(s) > kMarkerFloorBits / 2 + 1)
            throw ResourceError("code exceeds the materialization floor");
        BigNat z = pair(BigNat(tag), payload);
        if (bit_len(z) > kMarkerFloorBits)
            throw ResourceError("code exceeds the materialization floor");
        return z;
    }

    BigNat capped_pair2(const BigNat& a, const BigNat& b) {
        BigNat s = a + b;
        if (bit_len(s) > kMarkerFloorBits / 2 + 1)
            throw ResourceError("code exceeds the materialization floor");
        return pair(a, b);
    }

    BigNat term(const TermPtr& t) {
        auto it = memo.find(t.get());
        if (it != memo.end()) return it->second;
        BigNat z;
        switch (t->kind) {
            case TermKind::Zero: z = capped_pair(kTagZero, 0); break;
            case TermKind::Variable: z = capped_pair(kTagVariable, BigNat(t->var)); break;
            case TermKind::Succ: {
                if (t->succ_run.is_code_marker())
                    throw ResourceError("code exceeds the materialization floor");
                z = term(t->a);
                // each successor application roughly doubles the code length,
                // so the cap aborts long runs after a few dozen steps
                for (BigNat i = 0; i < t->succ_run.value(); ++i) z = capped_pair(kTagSucc, z);
                break;
            }
            case TermKind::Sum:
                z = capped_pair(kTagSum, capped_pair2(term(t->a), term(t->b)));
                break;
            case TermKind::Product:
                z = capped_pair(kTagProduct, capped_pair2(term(t->a), term(t->b)));
                break;
            case TermKind::Exp:
                z = capped_pair(kTagExp, capped_pair2(term(t->a), term(t->b)));
                break;
        }
        memo.emplace(t.get(), z);
        return z;
    }

    BigNat formula(const FormulaPtr& f) {
        auto it = memo.find(f.get());
        if (it != memo.end()) return it->second;
        BigNat z;
        switch (f->kind) {
            case FormulaKind::Bottom: z = capped_pair(kTagBottom, 0); break;
            case FormulaKind::Top: z = capped_pair(kTagTop, 0); break;
            case FormulaKind::Equal: z = capped_pair(kTagEqual, capped_pair2(term(f->ta), term(f->tb))); break;
            case FormulaKind::Less: z = capped_pair(kTagLess, capped_pair2(term(f->ta), term(f->tb))); break;
            case FormulaKind::Not: z = capped_pair(kTagNot, formula(f->fa)); break;
            case FormulaKind::And: z = capped_pair(kTagAnd, capped_pair2(formula(f->fa), formula(f->fb))); break;
            case FormulaKind::Or: z = capped_pair(kTagOr, capped_pair2(formula(f->fa), formula(f->fb))); break;
            case FormulaKind::Implies:
                z = capped_pair(kTagImplies, capped_pair2(formula(f->fa), formula(f->fb)));
                break;
            case FormulaKind::ForAll:
                z = capped_pair(kTagForAll, capped_pair2(BigNat(f->var), formula(f->fa)));
                break;
            case FormulaKind::Exists:
                z = capped_pair(kTagExists, capped_pair2(BigNat(f->var), formula(f->fa)));
                break;
            case FormulaKind::BoundedForAll:
                z = capped_pair(kTagBoundedForAll, capped_pair2(BigNat(f->var), capped_pair2(term(f->ta), formula(f->fa))));
                break;
            case FormulaKind::BoundedExists:
                z = capped_pair(kTagBoundedExists, capped_pair2(BigNat(f->var), capped_pair2(term(f->ta), formula(f->fa))));
                break;
        }
        memo.emplace(f.get(), z);
        return z;
    }
};

} // namespace

BigNat encode(const TermPtr& t) {
    Encoder e;
    return e.term(t);
}

BigNat encode(const FormulaPtr& f) {
    Encoder e;
    return e.formula(f);
}

LazyNat code_nat(const FormulaPtr& f) {
    try {
        return LazyNat(encode(f));
    } catch (const ResourceError&) {
        return LazyNat::code_of(f);
    }
}

TermPtr quote(const FormulaPtr& f) { return numeral(code_nat(f)); }

// --- decoding ----------------------------------------------------------------

namespace {

uint32_t var_of(const BigNat& v) {
    if (v > BigNat(UINT32_MAX)) throw ResourceError("variable index beyond the supported range");
    return static_cast<uint32_t>(v);
}

struct Decoder {
    uint64_t nodes_left;

    void tick() {
        if (nodes_left == 0) throw ResourceError("decode node budget exhausted");
        --nodes_left;
    }

    std::optional<TermPtr> term(const BigNat& z) {
        tick();
        auto [tag, payload] = unpair(z);
        if (tag > BigNat(kTagBoundedExists)) return std::nullopt;
        switch (static_cast<unsigned>(tag)) {
            case kTagZero:
                return payload == 0 ? std::optional(zero()) : std::nullopt;
            case kTagVariable:
                return variable(var_of(payload));
            case kTagSucc: {
                auto base = term(payload);
                if (!base) return std::nullopt;
                return succ(std::move(*base));
            }
            case kTagSum:
            case kTagProduct:
            case kTagExp: {
                auto [l, r] = unpair(payload);
                auto a = term(l), b = term(r);
                if (!a || !b) return std::nullopt;
                if (tag == kTagSum) return sum(std::move(*a), std::move(*b));
                if (tag == kTagProduct) return product(std::move(*a), std::move(*b));
                return exp(std::move(*a), std::move(*b));
            }
            default:
                return std::nullopt;
        }
    }

    std::optional<FormulaPtr> formula(const BigNat& z) {
        tick();
        auto [tag, payload] = unpair(z);
        if (tag > BigNat(kTagBoundedExists)) return std::nullopt;
        switch (static_cast<unsigned>(tag)) {
            case kTagBottom:
                return payload == 0 ? std::optional(bottom()) : std::nullopt;
            case kTagTop:
                return payload == 0 ? std::optional(top()) : std::nullopt;
            case kTagEqual:
            case kTagLess: {
                auto [l, r] = unpair(payload);
                auto a = term(l), b = term(r);
                if (!a || !b) return std::nullopt;
                return tag == kTagEqual ? equal(std::move(*a), std::move(*b))
                                        : less(std::move(*a), std::move(*b));
            }
            case kTagNot: {
                auto a = formula(payload);
                if (!a) return std::nullopt;
                return lnot(std::move(*a));
            }
            case kTagAnd:
            case kTagOr:
            case kTagImplies: {
                auto [l, r] = unpair(payload);
                auto a = formula(l), b = formula(r);
                if (!a || !b) return std::nullopt;
                if (tag == kTagAnd) return land(std::move(*a), std::move(*b));
                if (tag == kTagOr) return lor(std::move(*a), std::move(*b));
                return implies(std::move(*a), std::move(*b));
            }
            case kTagForAll:
            case kTagExists: {
                auto [v, b] = unpair(payload);
                auto body = formula(b);
                if (!body) return std::nullopt;
                return tag == kTagForAll ? forall(var_of(v), std::move(*body))
                                         : exists(var_of(v), std::move(*body));
            }
            case kTagBoundedForAll:
            case kTagBoundedExists: {
                auto [v, rest] = unpair(payload);
                auto [bt, b] = unpair(rest);
                auto bound = term(bt);
                auto body = formula(b);
                if (!bound || !body) return std::nullopt;
                try {
                    return tag == kTagBoundedForAll
                               ? bounded_forall(var_of(v), std::move(*bound), std::move(*body))
                               : bounded_exists(var_of(v), std::move(*bound), std::move(*body));
                } catch (const Error&) {
                    return std::nullopt; // bound term mentions the bound variable
                }
            }
            default:
                return std::nullopt;
        }
    }
};

void check_input(const BigNat& z, const DecodeLimits& limits) {
    if (bit_len(z) > limits.max_input_bits)
        throw ResourceError("decode input beyond the supported size");
}

} // namespace

std::optional<TermPtr> decode_term(const BigNat& z, DecodeLimits limits) {
    check_input(z, limits);
    Decoder d{limits.max_nodes};
    return d.term(z);
}

std::optional<FormulaPtr> decode(const BigNat& z, DecodeLimits limits) {
    check_input(z, limits);
    Decoder d{limits.max_nodes};
    return d.formula(z);
}

} // namespace conlab::coding
