#include "pervlen/local_system.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "pervlen/error.hpp"
#include "text_util.hpp"

namespace pervlen {

Representation Representation::rank_one(std::vector<Scalar> characters, bool sl2) {
  if (characters.empty()) throw std::invalid_argument("a local system needs at least one puncture");
  Representation rep;
  rep.rank_ = 1;
  rep.sl2_ = sl2;
  for (const auto& c : characters) {
    if (c.is_zero()) throw std::invalid_argument("rank-1 monodromy must be nonzero");
    if (sl2 && !c.is_one()) throw std::invalid_argument("sl2 flag requires monodromy 1 in rank 1");
    rep.disc_ = common_disc(rep.disc_, c.disc());
  }
  rep.characters_ = std::move(characters);
  return rep;
}

Representation Representation::rank_two(std::vector<Mat2> matrices, bool sl2) {
  if (matrices.empty()) throw std::invalid_argument("a local system needs at least one puncture");
  Representation rep;
  rep.rank_ = 2;
  rep.sl2_ = sl2;
  for (const auto& m : matrices) {
    rep.disc_ = common_disc(rep.disc_, m.disc());
    const Scalar det = m.det();
    if (det.is_zero()) throw std::invalid_argument("monodromy matrix is singular");
    if (sl2 && !det.is_one()) throw std::invalid_argument("sl2 flag requires det = 1");
  }
  rep.matrices_ = std::move(matrices);
  return rep;
}

const std::vector<Scalar>& Representation::characters() const {
  if (rank_ != 1) throw std::logic_error("characters() on a rank-2 local system");
  return characters_;
}

const std::vector<Mat2>& Representation::matrices() const {
  if (rank_ != 2) throw std::logic_error("matrices() on a rank-1 local system");
  return matrices_;
}

Representation Representation::dual() const {
  if (rank_ == 1) {
    std::vector<Scalar> inv;
    inv.reserve(characters_.size());
    for (const auto& c : characters_) inv.push_back(Scalar(1) / c);
    return rank_one(std::move(inv), sl2_);
  }
  std::vector<Mat2> inv;
  inv.reserve(matrices_.size());
  for (const auto& m : matrices_) inv.push_back(m.inverse().transpose());
  return rank_two(std::move(inv), sl2_);
}

std::vector<CompositionFactor> composition_factors(const Representation& rep) {
  if (rep.rank() == 1) return {{rep, 0}};
  const auto& mats = rep.matrices();
  const auto line = common_eigenvector(mats);
  if (!line) return {{rep, 0}};
  std::vector<Scalar> sub, quotient;
  for (const auto& m : mats) {
    Scalar c = eigenvalue_on(m, *line);
    quotient.push_back(m.det() / c);
    sub.push_back(std::move(c));
  }
  return {{Representation::rank_one(std::move(sub)), 0},
          {Representation::rank_one(std::move(quotient)), 1}};
}

std::size_t local_system_length(const Representation& rep) { return composition_factors(rep).size(); }

bool is_semisimple(const Representation& rep) {
  if (rep.rank() == 1) return true;
  const auto& mats = rep.matrices();
  const auto sub = common_eigenvector(mats);
  if (!sub) return true;
  const auto pivot = std::find_if(mats.begin(), mats.end(), [](const Mat2& m) { return !m.is_scalar(); });
  if (pivot == mats.end()) return true;
  // A split extension needs a second invariant line, which must be an
  // eigenline of the pivot; a non-scalar pivot with one eigenline is a
  // Jordan block.
  for (const auto& v : eigenlines(*pivot)) {
    if (v == *sub) continue;
    const bool invariant =
        std::all_of(mats.begin(), mats.end(), [&](const Mat2& m) { return parallel(v, m * v); });
    if (invariant) return true;
  }
  return false;
}

Representation semisimplify(const Representation& rep) {
  if (is_semisimple(rep)) return rep;
  const auto factors = composition_factors(rep);
  const auto& sub = factors[0].local_system.characters();
  const auto& quotient = factors[1].local_system.characters();
  std::vector<Mat2> diag;
  diag.reserve(sub.size());
  for (std::size_t i = 0; i < sub.size(); ++i) diag.push_back(Mat2::diagonal(sub[i], quotient[i]));
  return Representation::rank_two(std::move(diag), rep.sl2());
}

int puncture_h1(const Representation& rep, std::size_t p) {
  if (p >= rep.punctures()) throw std::out_of_range("puncture index out of range");
  if (rep.rank() == 1) return rep.characters()[p].is_one() ? 1 : 0;
  return eig1_multiplicity(rep.matrices()[p]);
}

std::size_t pushforward_length(const Representation& rep, Pushforward variant) {
  // Verdier duality swaps Rj_! and Rj_* and dualizes the local system.
  const Representation source = variant == Pushforward::kStar ? rep : rep.dual();
  std::size_t total = 0;
  for (const auto& f : composition_factors(source)) {
    total += 1;
    for (std::size_t p = 0; p < f.local_system.punctures(); ++p)
      total += static_cast<std::size_t>(puncture_h1(f.local_system, p));
  }
  return total;
}

std::size_t ic_length(const Representation& rep) {
  if (!is_semisimple(rep))
    throw std::invalid_argument("intermediate extension length is only defined here for semisimple input");
  return local_system_length(rep);
}

// ---------------------------------------------------------------------------
// JSON

namespace {

using nlohmann::json;

Scalar scalar_field(const json& j, const std::string& where) {
  try {
    if (j.is_string()) return Scalar::parse(j.get<std::string>());
    if (j.is_number_integer()) return Scalar(j.get<long>());
  } catch (const ParseError& e) {
    throw ParseError(where, e.what());
  }
  throw ParseError(where, "expected a scalar string");
}

const json& require(const json& obj, const char* key) {
  if (!obj.contains(key)) throw ParseError(key, "missing field");
  return obj.at(key);
}

}  // namespace

Representation parse_representation(std::string_view text) {
  std::size_t skipped = 0;
  const std::string body = detail::strip_comment_lines(text, skipped);
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, body.size());
    const auto line = skipped + 1 + static_cast<std::size_t>(std::count(body.begin(), body.begin() + static_cast<std::ptrdiff_t>(upto), '\n'));
    throw ParseError("line " + std::to_string(line), "invalid JSON");
  }
  if (!j.is_object()) throw ParseError("representation", "expected a JSON object");

  const json& punct = require(j, "punctures");
  const json& rank_j = require(j, "rank");
  const json& sl2_j = require(j, "sl2");
  const json& mats = require(j, "matrices");
  if (!punct.is_number_integer() || punct.get<long>() < 1) throw ParseError("punctures", "expected a positive integer");
  if (!rank_j.is_number_integer() || (rank_j.get<int>() != 1 && rank_j.get<int>() != 2))
    throw ParseError("rank", "expected 1 or 2");
  if (!sl2_j.is_boolean()) throw ParseError("sl2", "expected true or false");
  if (!mats.is_array()) throw ParseError("matrices", "expected an array");
  const auto n = static_cast<std::size_t>(punct.get<long>());
  const int rank = rank_j.get<int>();
  const bool sl2 = sl2_j.get<bool>();
  if (mats.size() != n)
    throw ParseError("matrices", "expected " + std::to_string(n) + " monodromies, found " + std::to_string(mats.size()));

  const auto size = static_cast<std::size_t>(rank);
  std::vector<std::vector<Scalar>> entries;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string where = "matrices[" + std::to_string(i) + "]";
    const json& m = mats[i];
    if (!m.is_array() || m.size() != size) throw ParseError(where, "expected a " + std::to_string(rank) + "x" + std::to_string(rank) + " matrix");
    std::vector<Scalar> flat;
    for (std::size_t r = 0; r < size; ++r) {
      const json& row = m[r];
      if (!row.is_array() || row.size() != size) throw ParseError(where + "[" + std::to_string(r) + "]", "expected a row of " + std::to_string(rank) + " scalars");
      for (std::size_t c = 0; c < size; ++c)
        flat.push_back(scalar_field(row[c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
    }
    entries.push_back(std::move(flat));
  }

  try {
    if (rank == 1) {
      std::vector<Scalar> chars;
      for (auto& e : entries) chars.push_back(std::move(e[0]));
      return Representation::rank_one(std::move(chars), sl2);
    }
    std::vector<Mat2> matrices;
    for (auto& e : entries) matrices.emplace_back(e[0], e[1], e[2], e[3]);
    return Representation::rank_two(std::move(matrices), sl2);
  } catch (const std::invalid_argument& e) {
    throw ParseError("matrices", e.what());
  } catch (const FieldMismatch& e) {
    throw ParseError("matrices", e.what());
  }
}

std::string to_json(const Representation& rep) {
  nlohmann::ordered_json j;
  j["punctures"] = rep.punctures();
  j["rank"] = rep.rank();
  j["sl2"] = rep.sl2();
  using Arr = nlohmann::ordered_json;
  auto mats = Arr::array();
  if (rep.rank() == 1) {
    for (const auto& c : rep.characters()) mats.push_back(Arr::array({Arr::array({c.to_string()})}));
  } else {
    for (const auto& m : rep.matrices()) {
      mats.push_back(Arr::array({Arr::array({m(0, 0).to_string(), m(0, 1).to_string()}),
                                 Arr::array({m(1, 0).to_string(), m(1, 1).to_string()})}));
    }
  }
  j["matrices"] = std::move(mats);
  return j.dump() + "\n";
}

}  // namespace pervlen
