#pragma once

#include "pervcalc/functors.hpp"
#include "pervcalc/perv.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pervcalc {

/// The worked objects on the node (two branches, the coordinate axes).
namespace node {

PervObject rx_shift(const Ring& ring);   // constant sheaf shifted: c = (1, -1), v = 0
PervObject ic_x(const Ring& ring);       // Psi = (R, R), Phi = 0
PervObject m_shift(const Ring& ring);    // skyscraper at the origin: Phi = R
PervMorphism t_resolution(const Ring& ring);  // rx_shift -> ic_x, a = id, b = 0
PervMorphism s_inclusion(const Ring& ring);   // m_shift -> rx_shift, b = id
/// T(a, b) = (0, S(a)) on m_shift + rx_shift.
PervMorphism endo_example(const Ring& ring);
PervObject jshriek_branch(const Ring& ring);  // (R, 0, R), c = 1, v = 0
PervObject jstar_branch(const Ring& ring);    // (R, 0, R), c = 0, v = 1

}  // namespace node

/// Raised when a gallery entry no longer reproduces one of its recorded facts.
class GalleryError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct GalleryFact {
    std::string description;
    bool holds = false;
};

struct GalleryEntry {
    std::string name;
    std::string summary;
    std::optional<PervObject> object;
    std::optional<PervMorphism> morphism;
    std::vector<GalleryFact> facts;
};

const std::vector<std::string>& gallery_names();

/// Builds the entry over `ring` and re-derives its facts; throws InputError
/// for an unknown name and GalleryError if a fact fails.
GalleryEntry gallery(const std::string& name, const Ring& ring = Ring::integers());

}  // namespace pervcalc
