#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "dcomp/binning.hpp"
#include "dcomp/code.hpp"
#include "dcomp/common.hpp"
#include "dcomp/sensitivity.hpp"
#include "dcomp/smoothness.hpp"
#include "dcomp/source.hpp"
#include "dcomp/spectral.hpp"

namespace dcomp {

// Function code with full side-information: seeded random bins at a fixed
// length; the decoder picks the in-bin sequence maximizing P(x|y) and
// applies the function.
inline std::shared_ptr<TableCode> fullside_function_code(const VectorFunction& fn,
                                                         const SourceModel& src, int len1,
                                                         std::uint64_t seed,
                                                         std::uint64_t budget = kDefaultBudget) {
  int n = fn.n();
  WordSpace xs{fn.x_size(), n}, ys{fn.y_size(), n};
  std::uint64_t xc = xs.count(), yc = ys.count();
  check_budget(xc * yc, budget, "full-side function code construction");
  int y_width = 1;
  while ((std::uint64_t{1} << y_width) < yc) ++y_width;
  CounterRng rng(seed, 0x66636F64ULL);
  std::vector<Bits> e1(xc), e2(yc);
  for (std::uint64_t i = 0; i < xc; ++i) e1[i] = to_fixed_bits(rng.below(1ULL << len1), len1);
  for (std::uint64_t i = 0; i < yc; ++i) e2[i] = to_fixed_bits(i, y_width);
  auto code = std::make_shared<TableCode>(n, fn.x_size(), fn.y_size(), e1, e2);
  Word x, y;
  for (std::uint64_t yi = 0; yi < yc; ++yi) {
    ys.word_into(yi, y);
    // best in-bin candidate per bin value
    std::unordered_map<std::string, std::pair<double, std::uint64_t>> best;
    for (std::uint64_t xi = 0; xi < xc; ++xi) {
      xs.word_into(xi, x);
      double p = src.block_pmf(x, y);
      auto it = best.find(e1[xi]);
      if (it == best.end() || p > it->second.first) best[e1[xi]] = {p, xi};
    }
    for (const auto& [bin, pick] : best) {
      xs.word_into(pick.second, x);
      code->set_decode_entry(bin, e2[yi], fn.eval(x, y));
    }
  }
  return code;
}

struct ModerateDeviationRow {
  int n = 0;
  double beta = 0, delta = 0;
  int base_len = 0;         // fixed length of the input function code
  int constructed_len = 0;  // fixed length of the transformed SW code
  double h_cond = 0;        // H(X|Y)
  double raw_excess_norm = 0;        // (len - n H) / n^{1-t}
  double surrogate_excess_norm = 0;  // display o-terms subtracted
  double vn = 0, vn_bound = 0;
  double pe_base = 0;
  double error_bound_rhs = 0;
  double error_bound_norm = 0;  // -log2(rhs) / n^{1-2t}
  bool ok_vn = true;
  bool ok_length = true;
};

// Runs the beta_n = 1/n, delta_n = n^{-3t/2} schedule over a list of block
// lengths, transforming a rate-(H + gamma n^{-t}) function code into a
// full-side SW code and reporting the normalized surrogates.
inline std::vector<ModerateDeviationRow> moderate_deviation_run(
    const SourceModel& src, const SingleLetterFunction& f, double t, double gamma,
    const std::vector<int>& n_list, std::uint64_t seed, std::uint64_t budget = kDefaultBudget) {
  check_hypothesis(t > 0 && t < 0.5, "moderate deviation: t must lie in (0, 1/2)");
  require(gamma > 0, "moderate deviation: gamma must be positive");
  check_hypothesis(src.kind() == SourceModel::Kind::iid,
                   "moderate deviation: source must be i.i.d.");
  for (double v : src.joint())
    check_hypothesis(v > 0, "moderate deviation: i.i.d. table must satisfy positivity");

  double h = spectral_entropies(src).h_x_given_y;
  std::vector<ModerateDeviationRow> rows;
  for (int n : n_list) {
    require(n >= 3, "moderate deviation: schedule needs n >= 3 so beta_n < 1/2");
    VectorFunction fn = lift_symbolwise(f, n);
    CheckResult sens = is_sensitive_given_y(fn, budget);
    check_hypothesis(sens.holds,
                     "moderate deviation: function is not sensitive conditioned on Y^n (Def. 3)");

    ModerateDeviationRow row;
    row.n = n;
    row.beta = 1.0 / n;
    row.delta = std::pow(static_cast<double>(n), -1.5 * t);
    row.base_len = std::max(1, static_cast<int>(std::floor(
                                   n * h + gamma * std::pow(static_cast<double>(n), 1.0 - t))));
    row.h_cond = h;

    auto phi = fullside_function_code(fn, src, row.base_len, seed + static_cast<std::uint64_t>(n),
                                      budget);
    TypicalSetConfig cfg{row.delta, row.beta};
    FullSideBuild build = build_full_side_sw(*phi, fn, src, cfg,
                                             seed + 7919 * static_cast<std::uint64_t>(n), budget);
    Word probe(static_cast<std::size_t>(n), 0);
    row.constructed_len = static_cast<int>(build.code->encode1(probe).size());
    row.pe_base = build.pe_phi;
    row.ok_length = build.len.ok;

    double scale = std::pow(static_cast<double>(n), 1.0 - t);
    row.raw_excess_norm = (row.constructed_len - n * h) / scale;
    double display_terms = 2.0 * n * row.delta +
                           2.0 * std::log2(row.base_len + 2.0 * n * row.delta) + 3.0;
    row.surrogate_excess_norm = (row.constructed_len - n * h - display_terms) / scale;

    row.vn = v_n(row.beta, n, src.x_size());
    row.vn_bound = 16.0 * src.x_size() * std::pow(static_cast<double>(n), 3.0);
    row.ok_vn = row.vn <= row.vn_bound;

    row.error_bound_rhs = build.error_bound.rhs;
    row.error_bound_norm =
        row.error_bound_rhs > 0
            ? -std::log2(row.error_bound_rhs) / std::pow(static_cast<double>(n), 1.0 - 2.0 * t)
            : std::numeric_limits<double>::infinity();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dcomp
