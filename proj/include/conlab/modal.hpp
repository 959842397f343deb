#pragma once
// Propositional modal syntax over atoms p0, p1, ...
//
//   A := p<nat> | bot | top | ~A | (A & A) | (A | A) | (A -> A) | []A | <>A
//
// print is canonical, parse is whitespace insensitive, and
// parse(print(a)) is structurally equal to a.
#include <conlab/common.hpp>

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace conlab::modal {

enum class MKind : uint8_t { Atom, Bottom, Top, Not, And, Or, Implies, Box, Diamond };

class MFormula;
using MPtr = std::shared_ptr<const MFormula>;

class MFormula {
public:
    MKind kind;
    uint32_t atom_index = 0;
    MPtr a, b;
    uint32_t size;        // node count
    uint32_t modal_depth; // deepest nesting of [] or <>

    MFormula(MKind k, uint32_t atom, MPtr a_, MPtr b_);
};

MPtr atom(uint32_t index);
MPtr bottom();
MPtr top();
MPtr mnot(MPtr a);
MPtr mand(MPtr a, MPtr b);
MPtr mor(MPtr a, MPtr b);
MPtr mimplies(MPtr a, MPtr b);
MPtr box(MPtr a);
MPtr diamond(MPtr a);

int cmp(const MPtr& a, const MPtr& b);
bool eq(const MPtr& a, const MPtr& b);

std::set<uint32_t> atoms_of(const MPtr& a);
bool is_closed(const MPtr& a); // no atoms

// <>A rewritten to ~[]~A throughout; the only modality left is [].
MPtr box_normal(const MPtr& a);

// Right-nested conjunction in the canonical order (cmp above);
// empty -> top, singleton -> the formula itself.
MPtr conjoin(std::vector<MPtr> parts);

std::string print(const MPtr& a);
MPtr parse(std::string_view text);

// All formulas of exactly n nodes over bot, top and atoms p0..p<atoms-1>,
// deterministic order, memoized.
const std::vector<MPtr>& of_size(unsigned n, unsigned atoms);
std::vector<MPtr> up_to_size(unsigned n, unsigned atoms);

} // namespace conlab::modal
