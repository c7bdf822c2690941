#include <isdlab/gf2.hpp>
#include <isdlab/rng.hpp>

#include <json.hpp>

namespace isdlab {

bool DecodingInstance::accepts(const BitVector& e) const {
  return e.size() == n && e.weight() == w && H.multiply(e) == s;
}

DecodingInstance random_instance(std::size_t n, std::size_t k, std::size_t w, std::uint64_t seed) {
  if (k == 0 || k >= n) throw ParameterError("random_instance: need 0 < k < n");
  if (w > n) throw ParameterError("random_instance: need w <= n");
  Rng rng(seed);
  const std::size_t r = n - k;
  BitMatrix H(r, n);
  do {
    for (std::size_t i = 0; i < r; ++i) {
      auto words = H.row(i).words();
      for (auto& x : words) x = rng.next();
      // clear padding
      if (n % 64) words.back() &= (std::uint64_t(1) << (n % 64)) - 1;
    }
  } while (H.rank() < r);
  const auto support = rng.partial_shuffle(n, w);
  DecodingInstance inst = make_instance(std::move(H), w, BitVector::from_indices(n, support));
  inst.seed = seed;
  return inst;
}

DecodingInstance make_instance(BitMatrix H, std::size_t w, BitVector planted) {
  if (planted.size() != H.cols()) throw ParameterError("make_instance: planted length != n");
  if (planted.weight() != w) throw ParameterError("make_instance: planted weight != w");
  if (H.rows() == 0 || H.rows() >= H.cols()) throw ParameterError("make_instance: need 0 < n-k < n");
  DecodingInstance inst;
  inst.n = H.cols();
  inst.k = H.cols() - H.rows();
  inst.w = w;
  inst.s = H.multiply(planted);
  inst.H = std::move(H);
  inst.planted = std::move(planted);
  return inst;
}

std::optional<PuncturedInstance> gaussian_puncture(const DecodingInstance& inst,
                                                   std::span<const std::size_t> positions) {
  const std::size_t n = inst.n;
  const std::size_t r = inst.H.rows();
  const std::size_t width = positions.size();
  if (width < inst.k || width > n) throw ParameterError("gaussian_puncture: need k <= |S| <= n");

  std::vector<char> in_s(n, 0);
  for (std::size_t p : positions) {
    if (p >= n || in_s[p]) throw ParameterError("gaussian_puncture: positions must be distinct and < n");
    in_s[p] = 1;
  }
  std::vector<std::size_t> complement;
  complement.reserve(n - width);
  for (std::size_t i = 0; i < n; ++i)
    if (!in_s[i]) complement.push_back(i);

  std::vector<BitVector> rows(r);
  std::vector<BitVector> urows(r, BitVector(r));
  std::vector<bool> syn(r);
  for (std::size_t i = 0; i < r; ++i) {
    rows[i] = inst.H.row(i);
    urows[i].set(i);
    syn[i] = inst.s.get(i);
  }

  std::vector<char> pivoted(r, 0);
  std::vector<std::size_t> pivot_row(complement.size());
  for (std::size_t j = 0; j < complement.size(); ++j) {
    const std::size_t c = complement[j];
    std::size_t piv = r;
    for (std::size_t i = 0; i < r; ++i)
      if (!pivoted[i] && rows[i].get(c)) {
        piv = i;
        break;
      }
    if (piv == r) return std::nullopt;
    pivoted[piv] = 1;
    pivot_row[j] = piv;
    for (std::size_t i = 0; i < r; ++i) {
      if (i == piv || !rows[i].get(c)) continue;
      rows[i] ^= rows[piv];
      urows[i] ^= urows[piv];
      syn[i] = syn[i] != syn[piv];
    }
  }

  const std::size_t ell = r - complement.size();
  PuncturedInstance out;
  out.n = n;
  out.positions.assign(positions.begin(), positions.end());
  out.complement = std::move(complement);
  out.Hp = BitMatrix(ell, width);
  out.sp = BitVector(ell);
  out.Hpp = BitMatrix(r - ell, width);
  out.spp = BitVector(r - ell);
  out.U = BitMatrix(r, r);

  auto copy_restricted = [&](const BitVector& src, BitVector& dst) {
    for (std::size_t j = 0; j < width; ++j)
      if (src.get(positions[j])) dst.set(j);
  };
  std::size_t t = 0;
  for (std::size_t i = 0; i < r; ++i) {
    if (pivoted[i]) continue;
    copy_restricted(rows[i], out.Hp.row(t));
    out.sp.set(t, syn[i]);
    out.U.row(t) = urows[i];
    ++t;
  }
  for (std::size_t j = 0; j < pivot_row.size(); ++j) {
    const std::size_t i = pivot_row[j];
    copy_restricted(rows[i], out.Hpp.row(j));
    out.spp.set(j, syn[i]);
    out.U.row(ell + j) = urows[i];
  }
  return out;
}

BitVector lift_error(const PuncturedInstance& p, const BitVector& eprime) {
  if (eprime.size() != p.width()) throw ContractViolation("lift_error: eprime length != |S|");
  if (p.Hp.multiply(eprime) != p.sp) throw ContractViolation("lift_error: Hp·e'ᵀ != sp");
  BitVector e(p.n);
  for (std::size_t j = 0; j < p.positions.size(); ++j)
    if (eprime.get(j)) e.set(p.positions[j]);
  for (std::size_t j = 0; j < p.complement.size(); ++j)
    if (p.spp.get(j) != p.Hpp.row(j).dot(eprime)) e.set(p.complement[j]);
  return e;
}

std::size_t lifted_outside_weight(const PuncturedInstance& p, const BitVector& eprime) {
  std::size_t w = 0;
  for (std::size_t j = 0; j < p.complement.size(); ++j)
    if (p.spp.get(j) != p.Hpp.row(j).dot(eprime)) ++w;
  return w;
}

BitVector restrict_to(const BitVector& e, std::span<const std::size_t> positions) {
  BitVector out(positions.size());
  for (std::size_t j = 0; j < positions.size(); ++j)
    if (e.get(positions[j])) out.set(j);
  return out;
}

std::string instance_to_json(const DecodingInstance& inst) {
  nlohmann::ordered_json j;
  j["n"] = inst.n;
  j["k"] = inst.k;
  j["w"] = inst.w;
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < inst.H.rows(); ++i) rows.push_back(inst.H.row(i).to_hex());
  j["H"] = std::move(rows);
  j["s"] = inst.s.to_hex();
  j["seed"] = inst.seed;
  return j.dump();
}

DecodingInstance instance_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw ParameterError(std::string("instance_from_json: ") + ex.what());
  }
  try {
    DecodingInstance inst;
    inst.n = j.at("n").get<std::size_t>();
    inst.k = j.at("k").get<std::size_t>();
    inst.w = j.at("w").get<std::size_t>();
    inst.seed = j.value("seed", std::uint64_t{0});
    if (inst.k == 0 || inst.k >= inst.n) throw ParameterError("instance_from_json: need 0 < k < n");
    const auto& rows = j.at("H");
    if (rows.size() != inst.n - inst.k) throw ParameterError("instance_from_json: H must have n-k rows");
    inst.H = BitMatrix(inst.n - inst.k, inst.n);
    for (std::size_t i = 0; i < rows.size(); ++i)
      inst.H.row(i) = BitVector::from_hex(rows[i].get<std::string>(), inst.n);
    inst.s = BitVector::from_hex(j.at("s").get<std::string>(), inst.n - inst.k);
    if (j.contains("planted")) {
      auto e = BitVector::from_hex(j.at("planted").get<std::string>(), inst.n);
      if (!inst.accepts(e)) throw ParameterError("instance_from_json: planted error does not match");
      inst.planted = std::move(e);
    }
    return inst;
  } catch (const nlohmann::json::exception& ex) {
    throw ParameterError(std::string("instance_from_json: ") + ex.what());
  }
}

}  // namespace isdlab
