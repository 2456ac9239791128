#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "pervlen/constructible_set.hpp"
#include "pervlen/local_system.hpp"
#include "pervlen/polynomial.hpp"
#include "pervlen/scalar.hpp"

namespace pervlen {

// A point (tr A, tr B, tr AB) of the SL2 character variety of the free group
// on two generators. Coordinates may live in different quadratic fields.
struct TracePoint {
  Scalar x, y, z;

  Point coords() const { return {x, y, z}; }
  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

std::string to_string(const TracePoint& t);

// The coordinate names "x", "y", "z".
const std::vector<std::string>& trace_vars();

// z^2 - xyz + x^2 + y^2 - 4 as a polynomial in trace_vars().
const Polynomial& discriminant_polynomial();

// Requires two punctures, rank 2 and det A = det B = 1; throws
// std::invalid_argument otherwise.
TracePoint trace_coords(const Representation& rep);

// z^2 - xyz + x^2 + y^2 - 4; zero exactly when the semisimple system with
// these traces is reducible. Throws FieldMismatch for mixed fields.
Scalar discriminant(const TracePoint& t);

// Same test as discriminant(t) == 0 but valid for mixed fields.
bool on_reducible_locus(const TracePoint& t);

// A semisimple SL2 representation with the given traces: irreducible when
// the discriminant is nonzero, otherwise diag(l, 1/l), diag(m, 1/m) with
// l + 1/l = x, m + 1/m = y and l*m + 1/(l*m) = z. Throws Unrepresentable if
// the construction needs two independent quadratic extensions.
Representation rep_from_traces(const TracePoint& t);

// Length of Rj_*(L[1]) for the semisimple L at t:
//   1 + [x=2] + [y=2]      off the reducible locus,
//   2 + 2[x=2] + 2[y=2]    on it.
std::size_t length_from_traces(const TracePoint& t);

// Closed form of length_from_traces as a function of the three tests
// (discriminant = 0, x = 2, y = 2).
std::size_t length_rule(bool reducible, bool x_is_2, bool y_is_2);

// {t : length_from_traces(t) >= k} in coordinates (x, y, z).
ConstructibleSet stratify(int k);

// {t : length_from_traces(t) == k}, the same set as
// stratify(k) minus stratify(k + 1), written in minimal form.
ConstructibleSet exact_length_locus(int k);

// Deterministic sample of trace points covering every stratum: an integer
// grid, images of reducible diagonal families and irreducible random points.
std::vector<LabeledPoint> structured_trace_sample();

}  // namespace pervlen
