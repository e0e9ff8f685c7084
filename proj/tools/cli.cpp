#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "denum/bounded.hpp"
#include "denum/combinatorics.hpp"
#include "denum/equation.hpp"
#include "denum/quasipoly.hpp"
#include "denum/recurrences.hpp"
#include "denum/transform.hpp"

namespace denum::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// parsing helpers

std::uint64_t parse_u64(const std::string& token, const char* what) {
  if (token.empty())
    throw invalid_input_error(std::string("empty ") + what);
  for (char ch : token)
    if (ch < '0' || ch > '9')
      throw invalid_input_error(std::string(what) + " '" + token + "' is not a decimal integer");
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(token.c_str(), &end, 10);
  if (errno != 0 || end != token.c_str() + token.size())
    throw invalid_input_error(std::string(what) + " '" + token + "' is out of range");
  return v;
}

SignedInt parse_big(const std::string& token, const char* what) {
  if (token.empty())
    throw invalid_input_error(std::string("empty ") + what);
  for (char ch : token)
    if (ch < '0' || ch > '9')
      throw invalid_input_error(std::string(what) + " '" + token + "' is not a decimal integer");
  return SignedInt(token, 10);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string token;
  std::stringstream stream(s);
  while (std::getline(stream, token, ','))
    out.push_back(token);
  if (!s.empty() && s.back() == ',')
    out.emplace_back();
  return out;
}

std::vector<std::uint64_t> parse_coeffs(const std::string& s) {
  std::vector<std::uint64_t> coeffs;
  for (const std::string& token : split_commas(s)) {
    const std::uint64_t a = parse_u64(token, "coefficient");
    if (a == 0)
      throw invalid_input_error("coefficients must be positive");
    coeffs.push_back(a);
  }
  if (coeffs.empty())
    throw invalid_input_error("--coeffs needs at least one value");
  return coeffs;
}

// ---------------------------------------------------------------------------
// small formatting helpers

std::string coeffs_text(const std::vector<std::uint64_t>& coeffs) {
  std::string out = "[";
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i)
      out += ",";
    out += std::to_string(coeffs[i]);
  }
  return out + "]";
}

ordered_json coeffs_json(const std::vector<std::uint64_t>& coeffs) {
  ordered_json arr = ordered_json::array();
  for (std::uint64_t a : coeffs)
    arr.push_back(std::to_string(a));
  return arr;
}

std::string weights_text(const std::vector<SignedInt>& l) {
  std::string out = "[";
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (i)
      out += ", ";
    out += l[i].get_str();
  }
  return out + "]";
}

// Renders c0 q^(n-1) + ... + c_{n-1} in descending powers, compactly:
// "5q^2 + 11q + 6", "q + 1", "(3/2)q^2 + ...", "0".
std::string poly_text(const std::vector<Rational>& cs) {
  std::string out;
  const std::size_t n = cs.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Rational& c = cs[i];
    if (c == 0)
      continue;
    const std::size_t deg = n - 1 - i;
    Rational mag = c;
    const bool negative = sgn(c) < 0;
    if (negative)
      mag = -mag;
    if (out.empty()) {
      if (negative)
        out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    std::string coeff = mag.get_str();
    const bool fraction = mag.get_den() != 1;
    if (deg == 0) {
      out += coeff;
    } else {
      if (fraction)
        out += "(" + coeff + ")";
      else if (mag != 1)
        out += coeff;
      out += "q";
      if (deg > 1)
        out += "^" + std::to_string(deg);
    }
  }
  return out.empty() ? "0" : out;
}

template <typename F>
std::int64_t time_us(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
}

// ---------------------------------------------------------------------------
// flat-table cache file

struct Cache {
  bool active = false;
  std::string path;
  std::vector<SignedInt> table;
};

Cache load_cache(const std::string& path, const Equation& eq) {
  Cache cache;
  if (path.empty())
    return cache;
  cache.active = true;
  cache.path = path;
  std::ifstream in(path);
  if (!in)
    return cache; // nothing cached yet; the file appears on first store
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const ordered_json::parse_error& e) {
    throw invalid_input_error("cache file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("version") || !doc["version"].is_number_integer() ||
      doc["version"].get<int>() != 1)
    throw invalid_input_error("cache file '" + path + "' has an unsupported version");
  if (!doc.contains("coeffs") || !doc["coeffs"].is_array() ||
      doc["coeffs"].size() != eq.arity())
    throw invalid_input_error("cache file '" + path + "' is for a different equation");
  for (std::size_t i = 0; i < eq.arity(); ++i) {
    if (!doc["coeffs"][i].is_string() ||
        doc["coeffs"][i].get<std::string>() != std::to_string(eq.coeffs()[i]))
      throw invalid_input_error("cache file '" + path + "' is for a different equation");
  }
  if (!doc.contains("flat") || !doc["flat"].is_array())
    throw invalid_input_error("cache file '" + path + "' is missing its table");
  for (const auto& entry : doc["flat"]) {
    if (!entry.is_string())
      throw invalid_input_error("cache file '" + path + "' holds a non-string table value");
    cache.table.push_back(parse_big(entry.get<std::string>(), "cached count"));
  }
  if (!cache.table.empty() && cache.table[0] != 1)
    throw invalid_input_error("cache file '" + path + "' table does not start with P(0) = 1");
  return cache;
}

void store_cache(Cache& cache, const Equation& eq, const std::vector<SignedInt>& table) {
  if (!cache.active || table.size() <= cache.table.size())
    return;
  cache.table = table;
  ordered_json doc;
  doc["version"] = 1;
  doc["coeffs"] = coeffs_json(eq.coeffs());
  ordered_json flat = ordered_json::array();
  for (const SignedInt& v : table)
    flat.push_back(v.get_str());
  doc["flat"] = std::move(flat);
  std::ofstream out(cache.path, std::ios::trunc);
  if (!out)
    throw invalid_input_error("cannot write cache file '" + cache.path + "'");
  out << doc.dump() << '\n';
}

// ---------------------------------------------------------------------------
// count

BigCount flat_with_cache(const Equation& eq, const SignedInt& b, Cache& cache) {
  const std::uint64_t guard = default_oracle_guard();
  if (b > guard)
    throw resource_limit_error("right-hand side " + b.get_str() +
                               " exceeds the dense-table guard " + std::to_string(guard) +
                               "; use the per-residue or decimation method");
  const std::uint64_t bv = mpz_get_ui(b.get_mpz_t());
  const std::vector<SignedInt> table = flat_table(eq, bv, cache.table);
  BigCount value{SignedInt(table[bv])};
  store_cache(cache, eq, table);
  return value;
}

std::string choose_method(const Equation& eq, const SignedInt& b) {
  if (eq.arity() == 2 && eq.common_gcd() == 1)
    return "twovar";
  if (eq.common_gcd() == 1 && s_of_residue(eq, Residue::of(eq, b)) == 0)
    return "closed";
  if (b > 1'000'000)
    return "quasipoly";
  return "flat";
}

BigCount run_method(const Equation& eq, const SignedInt& b, const std::string& method,
                    Cache& cache) {
  if (method == "oracle")
    return count_oracle(eq, b);
  if (method == "flat")
    return flat_with_cache(eq, b, cache);
  if (method == "decimate")
    return count_decimated(eq, b, 2);
  if (method == "quasipoly")
    return count_quasipoly(eq, b);
  if (method == "closed")
    return closed_form_count(eq, b);
  if (method == "twovar") {
    if (eq.arity() != 2)
      throw precondition_error("the two-variable method needs exactly two coefficients");
    return two_var_count(eq.coeffs()[0], eq.coeffs()[1], b);
  }
  throw invalid_input_error("unknown method '" + method + "'");
}

int do_count(const std::vector<std::uint64_t>& coeffs, const std::string& b_str,
             const std::string& method, bool json, const std::string& cache_path) {
  const Equation eq = make_equation(coeffs);
  const SignedInt b = parse_big(b_str, "right-hand side");
  Cache cache = load_cache(cache_path, eq);
  const std::string effective = method == "auto" ? choose_method(eq, b) : method;
  const BigCount value = run_method(eq, b, effective, cache);
  if (json) {
    ordered_json doc;
    doc["coeffs"] = coeffs_json(coeffs);
    doc["b"] = b.get_str();
    doc["method"] = effective;
    doc["value"] = value.str();
    std::cout << doc.dump() << '\n';
  } else {
    std::cout << value.str() << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// poly

int do_poly(const std::vector<std::uint64_t>& coeffs, const std::string& residue_str,
            bool json) {
  const Equation eq = make_equation(coeffs);
  const QuasiPolynomial qp = build_quasipoly(eq);
  std::vector<std::size_t> residues;
  if (!residue_str.empty()) {
    const SignedInt r = parse_big(residue_str, "residue");
    if (r >= eq.modulus())
      throw invalid_input_error("residue " + r.get_str() + " out of range [0, " +
                                eq.modulus().get_str() + ")");
    residues.push_back(mpz_get_ui(r.get_mpz_t()));
  } else {
    for (std::size_t r = 0; r < qp.residue_count(); ++r)
      residues.push_back(r);
  }
  if (json) {
    ordered_json doc;
    doc["coeffs"] = coeffs_json(coeffs);
    doc["modulus"] = eq.modulus().get_str();
    doc["gcd"] = std::to_string(eq.common_gcd());
    ordered_json rows = ordered_json::array();
    for (std::size_t r : residues) {
      const ResiduePlan& plan = qp.plan(r);
      const PolynomialForm form = polynomial_form(qp, plan.r);
      ordered_json row;
      row["r"] = plan.r.get_str();
      row["s"] = std::to_string(plan.s);
      ordered_json l = ordered_json::array();
      for (const SignedInt& w : plan.l)
        l.push_back(w.get_str());
      row["l"] = std::move(l);
      ordered_json poly = ordered_json::array();
      for (const Rational& c : form.coeffs)
        poly.push_back(c.get_str());
      row["poly"] = std::move(poly);
      rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    std::cout << doc.dump() << '\n';
  } else {
    std::cout << "equation: coeffs=" << coeffs_text(coeffs) << " n=" << eq.arity()
              << " M=" << eq.modulus().get_str() << " A=" << eq.coeff_sum().get_str()
              << " g=" << eq.common_gcd() << '\n';
    for (std::size_t r : residues) {
      const ResiduePlan& plan = qp.plan(r);
      const PolynomialForm form = polynomial_form(qp, plan.r);
      std::cout << "r=" << plan.r.get_str() << "  s=" << plan.s
                << "  l=" << weights_text(plan.l) << "  P(q) = " << poly_text(form.coeffs)
                << '\n';
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct IdentityResult {
  std::string name;
  bool pass = false;
};

struct Mismatch {
  std::string method;
  SignedInt b;
  SignedInt got;
  SignedInt expected;
};

struct VerifyState {
  std::vector<std::pair<std::string, std::string>> results;
  std::vector<std::pair<std::string, std::int64_t>> timings;
  std::vector<IdentityResult> identities;
  std::vector<std::string> notes;
  std::optional<Mismatch> mismatch;
};

// Applies the paper's partial two-variable classification (divisibility or
// large remainder or exactly a1 + a2 means one solution in the base period,
// otherwise none).  Returns the classification's P(r).
int piecewise_two_var(std::uint64_t a1, std::uint64_t a2, const SignedInt& r) {
  const SignedInt product = SignedInt(static_cast<unsigned long>(a1)) * a2;
  if (mpz_divisible_ui_p(r.get_mpz_t(), a1) || mpz_divisible_ui_p(r.get_mpz_t(), a2))
    return 1;
  if (r > product - a1 - a2)
    return 1;
  if (r == SignedInt(a1) + a2)
    return 1;
  return 0;
}

void sweep_method(VerifyState& state, const std::string& name,
                  const std::vector<SignedInt>& reference,
                  const std::function<SignedInt(std::uint64_t)>& compute) {
  std::optional<Mismatch> found;
  const std::int64_t us = time_us([&] {
    for (std::uint64_t b = 0; b < reference.size(); ++b) {
      const SignedInt got = compute(b);
      if (got != reference[b]) {
        found = Mismatch{name, SignedInt(b), got, reference[b]};
        return;
      }
    }
  });
  state.timings.emplace_back(name, us);
  if (found && !state.mismatch)
    state.mismatch = std::move(found);
  if (!found)
    state.results.emplace_back(name, reference.back().get_str());
}

int do_verify(const std::vector<std::uint64_t>& coeffs, std::uint64_t max_b,
              std::uint64_t seed, bool json, const std::string& cache_path) {
  const Equation eq = make_equation(coeffs);
  const std::uint64_t guard = default_oracle_guard();
  if (max_b > guard)
    throw invalid_input_error("--max-b " + std::to_string(max_b) +
                              " exceeds the oracle guard " + std::to_string(guard));
  VerifyState state;
  state.notes.push_back("g=" + std::to_string(eq.common_gcd()));

  std::vector<SignedInt> reference;
  state.timings.emplace_back("oracle", time_us([&] { reference = oracle_table(eq, max_b); }));
  state.results.emplace_back("oracle", reference.back().get_str());

  // Flat recurrence over the whole range (optionally seeded by the cache).
  Cache cache = load_cache(cache_path, eq);
  {
    std::vector<SignedInt> flat;
    state.timings.emplace_back("flat",
                               time_us([&] { flat = flat_table(eq, max_b, cache.table); }));
    for (std::uint64_t b = 0; b <= max_b; ++b) {
      if (flat[b] != reference[b]) {
        if (!state.mismatch)
          state.mismatch = Mismatch{"flat", SignedInt(b), flat[b], reference[b]};
        break;
      }
    }
    if (!state.mismatch || state.mismatch->method != "flat")
      state.results.emplace_back("flat", flat.back().get_str());
    store_cache(cache, eq, flat);
  }

  for (const unsigned m : {2u, 3u}) {
    const std::string name = "decimate" + std::to_string(m);
    try {
      DecimationSolver solver(eq, m);
      sweep_method(state, name, reference,
                   [&](std::uint64_t b) { return solver.count(SignedInt(b)).value(); });
    } catch (const resource_limit_error& e) {
      state.notes.push_back(name + " skipped: " + e.what());
    }
  }

  std::optional<QuasiPolynomial> qp;
  try {
    state.timings.emplace_back("quasipoly-build", time_us([&] { qp.emplace(build_quasipoly(eq)); }));
  } catch (const resource_limit_error& e) {
    state.notes.push_back(std::string("quasipoly skipped: ") + e.what());
  }
  if (qp)
    sweep_method(state, "quasipoly", reference,
                 [&](std::uint64_t b) { return eval_quasipoly(*qp, SignedInt(b)).value(); });

  // Closed form wherever its precondition holds.
  if (eq.common_gcd() == 1) {
    std::uint64_t applicable = 0;
    std::optional<Mismatch> found;
    const std::int64_t us = time_us([&] {
      for (std::uint64_t b = 0; b <= max_b; ++b) {
        const SignedInt bz(b);
        if (s_of_residue(eq, Residue::of(eq, bz)) != 0)
          continue;
        ++applicable;
        const SignedInt got = closed_form_count(eq, bz).value();
        if (got != reference[b]) {
          found = Mismatch{"closed", bz, got, reference[b]};
          return;
        }
      }
    });
    state.timings.emplace_back("closed", us);
    if (found && !state.mismatch)
      state.mismatch = std::move(found);
    if (!found) {
      if (applicable > 0)
        state.notes.push_back("closed form applicable on " + std::to_string(applicable) +
                              " of " + std::to_string(max_b + 1) + " inputs");
      else
        state.notes.push_back("closed form never applicable on this range");
    }
  } else {
    state.notes.push_back("closed form skipped: coefficients share a factor");
  }

  if (eq.arity() == 2 && eq.common_gcd() == 1)
    sweep_method(state, "twovar", reference, [&](std::uint64_t b) {
      return two_var_count(eq.coeffs()[0], eq.coeffs()[1], SignedInt(b)).value();
    });

  // Transform against randomized targets: a few target equations, each
  // checked at randomized right-hand sides (plans built per residue class).
  {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> coeff_dist(1, 4);
    std::uniform_int_distribution<std::uint64_t> b_dist(0, max_b);
    std::optional<Mismatch> found;
    const std::int64_t us = time_us([&] {
      for (int t = 0; t < 3 && !found; ++t) {
        std::vector<std::uint64_t> target(eq.arity());
        for (std::uint64_t& c : target)
          c = coeff_dist(rng);
        std::map<SignedInt, TransformPlan> plans;
        for (int i = 0; i < 25; ++i) {
          const SignedInt b(b_dist(rng));
          const Residue r = Residue::of(eq, b);
          auto it = plans.find(r.value());
          if (it == plans.end())
            it = plans.emplace(r.value(), build_transform(eq, target, r)).first;
          const SignedInt got = transform_count(it->second, b).value();
          if (got != reference[mpz_get_ui(b.get_mpz_t())]) {
            found = Mismatch{"transform", b, got, reference[mpz_get_ui(b.get_mpz_t())]};
            break;
          }
        }
      }
    });
    state.timings.emplace_back("transform", us);
    if (found && !state.mismatch)
      state.mismatch = std::move(found);
    if (!found)
      state.notes.push_back("transform checked against 3 randomized targets");
  }

  // Identity suite.
  if (qp) {
    const Equation reduced = eq.reduced();
    const SignedInt scaled = [&] {
      SignedInt out;
      mpz_pow_ui(out.get_mpz_t(), reduced.modulus().get_mpz_t(),
                 static_cast<unsigned long>(eq.arity()) - 1);
      return out;
    }();
    SignedInt prod = 1;
    for (std::uint64_t a : reduced.coeffs())
      prod *= static_cast<unsigned long>(a);
    bool sums_ok = true;
    for (std::size_t r = 0; r < qp.value().residue_count(); ++r) {
      if (eq.common_gcd() > 1 && r % eq.common_gcd() != 0)
        continue;
      const ResiduePlan& plan = qp.value().plan(r);
      SignedInt total = 0;
      for (const SignedInt& w : plan.l)
        total += w;
      if (total * prod != scaled)
        sums_ok = false;
    }
    state.identities.push_back({"quasi-coeff-sum", sums_ok});
    // The alternating depth identity, recomputed from raw counts.
    bool alt_ok = true;
    const std::uint64_t Mr = mpz_get_ui(reduced.modulus().get_mpz_t());
    const std::vector<SignedInt> reduced_counts =
        oracle_table(reduced, eq.arity() * Mr);
    for (std::uint64_t rr = 0; rr < Mr; ++rr) {
      const unsigned s = s_of_residue(reduced, Residue(SignedInt(rr), reduced.modulus()));
      SignedInt alt = 0;
      for (unsigned j = 0; j <= s; ++j) {
        const SignedInt weight =
            binomial(SignedInt(static_cast<unsigned long>(eq.arity()) - 1), j).value();
        const SignedInt& count = reduced_counts[rr + (s - j) * Mr];
        if (j % 2 == 0)
          mpz_addmul(alt.get_mpz_t(), weight.get_mpz_t(), count.get_mpz_t());
        else
          mpz_submul(alt.get_mpz_t(), weight.get_mpz_t(), count.get_mpz_t());
      }
      if (alt * prod != scaled)
        alt_ok = false;
    }
    state.identities.push_back({"quasi-alt-sum", alt_ok});
    if (eq.common_gcd() > 1)
      state.notes.push_back("coefficient identities checked on the reduced equation");
  }
  {
    const FlatRecurrenceCoeffs rec = lprime_coeffs(eq);
    bool ok = true;
    const std::size_t K = rec.weights.size() - 1;
    for (std::size_t k = 0; k <= K; ++k)
      if (rec.weights[k] != rec.weights[K - k])
        ok = false;
    state.identities.push_back({"flat-palindrome", ok});
  }
  {
    bool ok = true;
    try {
      const PstarTable table(eq); // symmetry and total are asserted inside
      const std::vector<SignedInt>& row = table.row();
      for (std::size_t d = 0; d < row.size(); ++d)
        if (row[d] != row[row.size() - 1 - d])
          ok = false;
    } catch (const consistency_error&) {
      ok = false;
    }
    state.identities.push_back({"zero-one-symmetry", ok});
  }
  if (eq.arity() == 2 && eq.common_gcd() == 1) {
    // The partial piecewise classification is recorded, not trusted: inside
    // its stated hypothesis a mismatch is a failure, outside it mismatches
    // are noted.
    std::uint64_t a1 = eq.coeffs()[0], a2 = eq.coeffs()[1];
    if (a1 > a2)
      std::swap(a1, a2);
    const bool hypothesis = a1 == 2 || (a1 == 3 && a2 < 6);
    const SignedInt product = SignedInt(static_cast<unsigned long>(a1)) * a2;
    std::vector<std::string> mismatches;
    for (std::uint64_t b = 0; b <= max_b; ++b) {
      const SignedInt bz(b);
      SignedInt q, r;
      mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), bz.get_mpz_t(), product.get_mpz_t());
      const SignedInt predicted = q + piecewise_two_var(a1, a2, r);
      if (predicted != reference[b])
        mismatches.push_back(std::to_string(b));
    }
    if (!mismatches.empty()) {
      std::string note = "two-variable piecewise rule disagrees at b = ";
      for (std::size_t i = 0; i < mismatches.size() && i < 8; ++i)
        note += (i ? ", " : "") + mismatches[i];
      if (mismatches.size() > 8)
        note += ", ...";
      note += hypothesis ? " (inside its hypothesis)" : " (outside its stated hypothesis)";
      state.notes.push_back(note);
    }
    state.identities.push_back({"twovar-piecewise", !hypothesis || mismatches.empty()});
  }

  bool identities_ok = true;
  for (const IdentityResult& id : state.identities)
    identities_ok = identities_ok && id.pass;
  const bool agreement = !state.mismatch.has_value();
  const int exit_code = (agreement && identities_ok) ? 0 : 1;

  if (json) {
    ordered_json doc;
    doc["coeffs"] = coeffs_json(coeffs);
    doc["b"] = state.mismatch ? state.mismatch->b.get_str() : std::to_string(max_b);
    ordered_json results = ordered_json::object();
    for (const auto& [name, value] : state.results)
      results[name] = value;
    doc["results"] = std::move(results);
    doc["agreement"] = agreement;
    ordered_json timings = ordered_json::object();
    for (const auto& [name, us] : state.timings)
      timings[name] = std::to_string(us);
    doc["timings_us"] = std::move(timings);
    ordered_json identities = ordered_json::array();
    for (const IdentityResult& id : state.identities) {
      ordered_json entry;
      entry["name"] = id.name;
      entry["pass"] = id.pass;
      identities.push_back(std::move(entry));
    }
    doc["identities"] = std::move(identities);
    doc["notes"] = state.notes;
    if (state.mismatch) {
      ordered_json bad;
      bad["method"] = state.mismatch->method;
      bad["b"] = state.mismatch->b.get_str();
      bad["got"] = state.mismatch->got.get_str();
      bad["expected"] = state.mismatch->expected.get_str();
      doc["counterexample"] = std::move(bad);
    }
    std::cout << doc.dump() << '\n';
  } else {
    std::cout << "equation: coeffs=" << coeffs_text(coeffs) << " n=" << eq.arity()
              << " M=" << eq.modulus().get_str() << " A=" << eq.coeff_sum().get_str()
              << " g=" << eq.common_gcd() << '\n';
    for (const auto& [name, us] : state.timings)
      std::cout << "method " << name << ": " << us << " us\n";
    for (const IdentityResult& id : state.identities)
      std::cout << "identity " << id.name << ": " << (id.pass ? "pass" : "FAIL") << '\n';
    for (const std::string& note : state.notes)
      std::cout << "note: " << note << '\n';
    if (state.mismatch)
      std::cout << "MISMATCH: method=" << state.mismatch->method
                << " b=" << state.mismatch->b.get_str()
                << " got=" << state.mismatch->got.get_str()
                << " expected=" << state.mismatch->expected.get_str() << '\n';
    std::cout << "verify: " << (exit_code == 0 ? "PASS" : "FAIL") << " (methods compared for b <= "
              << max_b << ")\n";
  }
  return exit_code;
}

// ---------------------------------------------------------------------------
// bench

struct BenchEntry {
  std::string method;
  std::optional<std::string> value;
  std::string skip_reason;
  std::int64_t us = 0;
};

int do_bench(const std::vector<std::uint64_t>& coeffs, const std::string& b_list, bool json,
             const std::string& cache_path) {
  const Equation eq = make_equation(coeffs);
  std::vector<SignedInt> bs;
  for (const std::string& token : split_commas(b_list))
    bs.push_back(parse_big(token, "right-hand side"));
  if (bs.empty())
    throw invalid_input_error("--b needs at least one value");
  Cache cache = load_cache(cache_path, eq);
  bool all_agree = true;
  ordered_json rows = ordered_json::array();
  std::ostringstream text;
  for (const SignedInt& b : bs) {
    std::vector<BenchEntry> entries;
    auto timed = [&](const char* name, auto&& f) {
      BenchEntry entry;
      entry.method = name;
      try {
        BigCount value;
        entry.us = time_us([&] { value = f(); });
        entry.value = value.str();
      } catch (const precondition_error& e) {
        entry.skip_reason = "precondition";
      } catch (const resource_limit_error& e) {
        entry.skip_reason = "guard";
      }
      entries.push_back(std::move(entry));
    };
    timed("oracle", [&] { return count_oracle(eq, b); });
    timed("flat", [&] { return flat_with_cache(eq, b, cache); });
    timed("decimate", [&] { return count_decimated(eq, b, 2); });
    timed("quasipoly", [&] { return count_quasipoly(eq, b); });
    timed("closed", [&] { return closed_form_count(eq, b); });
    timed("twovar", [&] {
      if (eq.arity() != 2)
        throw precondition_error("two coefficients needed");
      return two_var_count(eq.coeffs()[0], eq.coeffs()[1], b);
    });
    std::optional<std::string> consensus;
    for (const BenchEntry& entry : entries) {
      if (!entry.value)
        continue;
      if (!consensus)
        consensus = entry.value;
      else if (*consensus != *entry.value)
        all_agree = false;
    }
    if (json) {
      ordered_json row;
      row["b"] = b.get_str();
      ordered_json methods = ordered_json::array();
      for (const BenchEntry& entry : entries) {
        ordered_json m;
        m["method"] = entry.method;
        if (entry.value) {
          m["value"] = *entry.value;
          m["us"] = std::to_string(entry.us);
        } else {
          m["skipped"] = entry.skip_reason;
        }
        methods.push_back(std::move(m));
      }
      row["methods"] = std::move(methods);
      rows.push_back(std::move(row));
    } else {
      text << "b=" << b.get_str() << ":";
      bool first = true;
      for (const BenchEntry& entry : entries) {
        text << (first ? " " : ", ") << entry.method << "=";
        if (entry.value)
          text << *entry.value << " (" << entry.us << " us)";
        else
          text << "skipped (" << entry.skip_reason << ")";
        first = false;
      }
      text << '\n';
    }
  }
  if (json) {
    ordered_json doc;
    doc["coeffs"] = coeffs_json(coeffs);
    doc["bench"] = std::move(rows);
    doc["agreement"] = all_agree;
    std::cout << doc.dump() << '\n';
  } else {
    std::cout << text.str();
    if (!all_agree)
      std::cout << "bench: methods disagree\n";
  }
  return all_agree ? 0 : 1;
}

} // namespace

// ---------------------------------------------------------------------------

int run(int argc, char** argv) {
  CLI::App app{"exact counting of non-negative integer solutions of a1 x1 + ... + an xn = b"};
  app.require_subcommand(1);

  std::string coeffs_str, b_str, residue_str, cache_path;
  std::string method = "auto";
  std::string max_b_str;
  std::uint64_t seed = 12345;
  bool json = false;

  CLI::App* count = app.add_subcommand("count", "compute P(b)");
  count->add_option("--coeffs", coeffs_str, "comma-separated positive coefficients")->required();
  count->add_option("--b", b_str, "right-hand side (arbitrary precision)")->required();
  count->add_option("--method", method,
                    "auto|oracle|flat|decimate|quasipoly|closed|twovar (default auto)")
      ->check(CLI::IsMember({"auto", "oracle", "flat", "decimate", "quasipoly", "closed",
                             "twovar"}));
  count->add_flag("--json", json, "emit JSON");
  count->add_option("--cache", cache_path, "flat-table cache file");

  CLI::App* poly = app.add_subcommand("poly", "emit the per-residue expansion table");
  poly->add_option("--coeffs", coeffs_str, "comma-separated positive coefficients")->required();
  poly->add_option("--residue", residue_str, "restrict to one residue class");
  poly->add_flag("--json", json, "emit JSON");

  CLI::App* verify = app.add_subcommand("verify", "cross-check every method against the oracle");
  verify->add_option("--coeffs", coeffs_str, "comma-separated positive coefficients")->required();
  verify->add_option("--max-b", max_b_str, "sweep b = 0..max-b")->required();
  verify->add_option("--seed", seed, "seed for randomized target equations");
  verify->add_flag("--json", json, "emit JSON");
  verify->add_option("--cache", cache_path, "flat-table cache file");

  CLI::App* bench = app.add_subcommand("bench", "time every method");
  bench->add_option("--coeffs", coeffs_str, "comma-separated positive coefficients")->required();
  bench->add_option("--b", b_str, "comma-separated right-hand sides")->required();
  bench->add_flag("--json", json, "emit JSON");
  bench->add_option("--cache", cache_path, "flat-table cache file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0)
      return app.exit(e); // --help and friends
    app.exit(e);
    return 2;
  }

  try {
    if (*count)
      return do_count(parse_coeffs(coeffs_str), b_str, method, json, cache_path);
    if (*poly)
      return do_poly(parse_coeffs(coeffs_str), residue_str, json);
    if (*verify)
      return do_verify(parse_coeffs(coeffs_str), parse_u64(max_b_str, "--max-b"), seed, json,
                       cache_path);
    if (*bench)
      return do_bench(parse_coeffs(coeffs_str), b_str, json, cache_path);
  } catch (const invalid_input_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const precondition_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const resource_limit_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const consistency_error& e) {
    std::cerr << "internal check failed: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

} // namespace denum::cli
