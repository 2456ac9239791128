#include "pervlen/trace_geometry.hpp"

#include <functional>
#include <random>
#include <stdexcept>

#include "pervlen/error.hpp"

namespace pervlen {

std::string to_string(const TracePoint& t) {
  return "(" + t.x.to_string() + ", " + t.y.to_string() + ", " + t.z.to_string() + ")";
}

const std::vector<std::string>& trace_vars() {
  static const std::vector<std::string> vars{"x", "y", "z"};
  return vars;
}

const Polynomial& discriminant_polynomial() {
  static const Polynomial p = Polynomial::parse("z^2 - x*y*z + x^2 + y^2 - 4", trace_vars());
  return p;
}

TracePoint trace_coords(const Representation& rep) {
  if (rep.rank() != 2) throw std::invalid_argument("trace coordinates need a rank-2 local system");
  if (rep.punctures() != 2) throw std::invalid_argument("trace coordinates need exactly two punctures");
  const Mat2& a = rep.matrices()[0];
  const Mat2& b = rep.matrices()[1];
  if (!a.det().is_one() || !b.det().is_one()) throw std::invalid_argument("trace coordinates need det A = det B = 1");
  return {a.trace(), b.trace(), (a * b).trace()};
}

Scalar discriminant(const TracePoint& t) {
  return t.z * t.z - t.x * t.y * t.z + t.x * t.x + t.y * t.y - Scalar(4);
}

bool on_reducible_locus(const TracePoint& t) {
  return discriminant_polynomial().evaluate(t.coords()).is_zero();
}

namespace {

// l with l + 1/l = trace, namely (trace + sqrt(trace^2 - 4)) / 2.
std::optional<Scalar> eigenvalue_from_trace(const Scalar& trace) {
  const auto root = sqrt_in_field(trace * trace - Scalar(4));
  if (!root) return std::nullopt;
  try {
    return (trace + *root) * Scalar(mpq_class(1, 2));
  } catch (const FieldMismatch&) {
    return std::nullopt;
  }
}

Representation sl2_pair(Mat2 a, Mat2 b) { return Representation::rank_two({std::move(a), std::move(b)}, true); }

Representation reducible_from_traces(const TracePoint& t) {
  const auto l = eigenvalue_from_trace(t.x);
  const auto m = eigenvalue_from_trace(t.y);
  if (!l || !m) throw Unrepresentable("eigenvalues need a second quadratic extension");
  const Scalar one(1);
  for (const Scalar& mu : {*m, one / *m}) {
    const Scalar prod = *l * mu;
    if (prod + one / prod == t.z)
      return sl2_pair(Mat2::diagonal(*l, one / *l), Mat2::diagonal(mu, one / mu));
  }
  throw std::logic_error("reducible trace point without matching characters");
}

Representation irreducible_from_traces(const TracePoint& t) {
  const Scalar one(1);
  // B diagonal: A = [[x, 1], [-1, 0]], B = [[m, 0], [z - x*m, 1/m]], tr AB = z.
  if (const auto m = eigenvalue_from_trace(t.y)) {
    try {
      return sl2_pair(Mat2(t.x, one, -one, Scalar(0)), Mat2(*m, Scalar(0), t.z - t.x * *m, one / *m));
    } catch (const FieldMismatch&) {
    }
  }
  // A diagonal: A = [[l, 0], [z - y*l, 1/l]], B = [[y, 1], [-1, 0]].
  if (const auto l = eigenvalue_from_trace(t.x)) {
    try {
      return sl2_pair(Mat2(*l, Scalar(0), t.z - t.y * *l, one / *l), Mat2(t.y, one, -one, Scalar(0)));
    } catch (const FieldMismatch&) {
    }
  }
  throw Unrepresentable("no section over a single quadratic field for " + to_string(t));
}

}  // namespace

Representation rep_from_traces(const TracePoint& t) {
  try {
    common_disc(common_disc(t.x, t.y), t.z.disc());
  } catch (const FieldMismatch&) {
    throw Unrepresentable("trace coordinates live in different quadratic fields");
  }
  try {
    return on_reducible_locus(t) ? reducible_from_traces(t) : irreducible_from_traces(t);
  } catch (const FieldMismatch&) {
    throw Unrepresentable("construction needs a second quadratic extension");
  }
}

std::size_t length_rule(bool reducible, bool x_is_2, bool y_is_2) {
  // Reducible: two characters (l, m) and (1/l, 1/m), each contributing
  // 1 + [l = 1] + [m = 1]; l = 1 iff x = 2. Irreducible: one factor, and a
  // trace-2 monodromy is a single unipotent Jordan block.
  const std::size_t jumps = (x_is_2 ? 1 : 0) + (y_is_2 ? 1 : 0);
  return reducible ? 2 + 2 * jumps : 1 + jumps;
}

std::size_t length_from_traces(const TracePoint& t) {
  const Scalar two(2);
  return length_rule(on_reducible_locus(t), t.x == two, t.y == two);
}

namespace {

ConstructibleSet locus_where(const std::function<bool(std::size_t)>& keep) {
  const auto& vars = trace_vars();
  const std::vector<Polynomial> atoms{discriminant_polynomial(), Polynomial::parse("x - 2", vars),
                                      Polynomial::parse("y - 2", vars)};
  return from_truth_table(vars, atoms, [&](std::span<const bool> zero) {
    return keep(length_rule(zero[0], zero[1], zero[2]));
  });
}

}  // namespace

ConstructibleSet stratify(int k) {
  return locus_where([k](std::size_t len) { return static_cast<long>(len) >= k; });
}

ConstructibleSet exact_length_locus(int k) {
  return locus_where([k](std::size_t len) { return static_cast<long>(len) == k; });
}

std::vector<LabeledPoint> structured_trace_sample() {
  std::vector<LabeledPoint> sample;
  auto add = [&](const Scalar& x, const Scalar& y, const Scalar& z, std::string label) {
    sample.push_back({{x, y, z}, std::move(label)});
  };

  for (int x = -2; x <= 4; ++x)
    for (int y = -2; y <= 4; ++y)
      for (int z = -2; z <= 4; ++z)
        add(x, y, z, "grid(" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) + ")");

  // Traces of diag(l, 1/l), diag(m, 1/m) and of diag(l, 1/l), diag(1/m, m).
  const Scalar golden_plus = Scalar::parse("3/2+1/2*sqrt(5)");
  const Scalar golden_minus = Scalar::parse("3/2-1/2*sqrt(5)");
  const std::vector<std::pair<Scalar, std::string>> eig{
      {Scalar(1), "1"},           {Scalar(-1), "-1"},         {Scalar(2), "2"},
      {Scalar(mpq_class(1, 2)), "1/2"}, {golden_plus, "(3+sqrt5)/2"}, {golden_minus, "(3-sqrt5)/2"},
      {Scalar(3), "3"},           {Scalar(-2), "-2"}};
  const Scalar one(1);
  for (const auto& [l, ln] : eig) {
    for (const auto& [m, mn] : eig) {
      const Scalar lm = l * m;
      add(l + one / l, m + one / m, lm + one / lm, "reducible(l=" + ln + ",m=" + mn + ")");
    }
  }

  // Irreducible points with rational coordinates of height <= 10; mt19937
  // output is fully specified, so the sample is platform independent.
  std::mt19937 gen(20240611U);
  auto coord = [&] {
    const long num = static_cast<long>(gen() % 21U) - 10;
    const long den = static_cast<long>(gen() % 10U) + 1;
    return Scalar(mpq_class(num, den));
  };
  int produced = 0;
  while (produced < 64) {
    TracePoint t{coord(), coord(), coord()};
    if (on_reducible_locus(t)) continue;
    add(t.x, t.y, t.z, "irreducible#" + std::to_string(produced++));
  }

  // Points on the lines {x=2, y=z}, {y=2, x=z} and {x=2, y=2} with quadratic
  // or generic coordinates, plus coordinates from two different fields.
  const Scalar s2 = Scalar::sqrt_of(2);
  const Scalar s3 = Scalar::sqrt_of(3);
  add(2, one + s2, one + s2, "line(x=2,y=z,1+sqrt2)");
  add(one + s2, 2, one + s2, "line(y=2,x=z,1+sqrt2)");
  add(2, 2, s3, "line(x=2,y=2,sqrt3)");
  add(2, Scalar(mpq_class(7, 3)), Scalar(mpq_class(7, 3)), "line(x=2,y=z,7/3)");
  add(Scalar(mpq_class(-5, 4)), 2, Scalar(mpq_class(-5, 4)), "line(y=2,x=z,-5/4)");
  add(s2, s3, one, "mixed(sqrt2,sqrt3,1)");
  add(s2, s3, s2, "mixed(sqrt2,sqrt3,sqrt2)");
  return sample;
}

}  // namespace pervlen
