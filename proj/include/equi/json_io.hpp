#pragma once

// JSON encodings of the library types. Rationals travel as "num/den"
// strings; every list is emitted in canonical order so output is
// byte-stable. Readers throw ParseError on malformed input.

#include "equi/connections.hpp"
#include "equi/expansional.hpp"
#include "equi/flat_bundles.hpp"
#include "equi/hopf_characters.hpp"

#include <json.hpp>

namespace equi {

using Json = nlohmann::json;

Json rational_to_json(const Rational &q);
Rational rational_from_json(const Json &j);

Json poly_to_json(const PolyCoeff &p);
PolyCoeff poly_from_json(const Json &j);

Json laurent_to_json(const LaurentSeries &x);
LaurentSeries laurent_from_json(const Json &j);

Json series_to_json(const Series &x);
/// Coefficients may be Laurent objects or bare rational strings.
Series series_from_json(const Json &j, int default_trunc = NCSeries<LaurentSeries>::kDefaultTrunc);

Json character_to_json(const Character &phi);
Character character_from_json(const Json &j, int default_trunc = NCSeries<LaurentSeries>::kDefaultTrunc);

Json connection_to_json(const InvariantConnection &omega);
InvariantConnection connection_from_json(const Json &j, int default_trunc = NCSeries<LaurentSeries>::kDefaultTrunc);

/// Rows ordered by word length, then lexicographically.
std::vector<FrameEntry> frame_rows(const UniversalFrame &frame);
Json frame_to_json(const UniversalFrame &frame, int order);
std::string frame_to_csv(const UniversalFrame &frame);
std::vector<FrameEntry> frame_from_json(const Json &j);

struct Verdict {
    bool flat = false;
    bool equisingular = false;
    std::optional<LieElement> beta;
    std::optional<int> obstruction_degree;
    Word obstruction_word;
    PolyCoeff obstruction_residue;
};
Verdict verify_connection(const InvariantConnection &omega);
Json verdict_to_json(const Verdict &v);
Verdict verdict_from_json(const Json &j);

Json matrix_to_json(const RationalMatrix &m);
RationalMatrix matrix_from_json(const Json &j);

Json object_to_json(const BundleObject &obj);
BundleObject object_from_json(const Json &j);

/// {"blocks": [{"degree": d, "matrix": ...}]}, assembled against the two objects.
Json morphism_to_json(const BundleObject &source, const BundleObject &target, const RationalMatrix &T);
RationalMatrix morphism_from_json(const Json &j, const BundleObject &source, const BundleObject &target);

}  // namespace equi
