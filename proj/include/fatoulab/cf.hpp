#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fatoulab/precision.hpp"

namespace fatoulab {

struct PrecisionExhausted : std::runtime_error {
  PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};
struct DepthExceeded : std::runtime_error {
  DepthExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Nearest-integer continued fraction of a real number:
//   alpha = a_0 + eps_0/(a_1 + eps_1/(a_2 + ...)),  1/alpha_{n-1} = a_n + eps_n alpha_n,
// with a_n the closest integer to 1/alpha_{n-1} and alpha_n = ||1/alpha_{n-1}|| in (0,1/2).
template <class R>
struct ModifiedCF {
  std::vector<BigInt> a;    // a_0, a_1, ... ; a_0 may be any integer, a_n >= 2 for n >= 1
  std::vector<int> eps;     // eps_n = +-1, eps_n pairs with level n: alpha_{n-1} -> a_n
  std::vector<R> alpha_seq; // alpha_0, alpha_1, ...
  std::size_t depth = 0;    // number of computed levels beyond a_0
  bool terminated = false;  // rational input: some alpha_n vanished

  const R& alpha(std::size_t n) const {
    if (n >= alpha_seq.size()) throw DepthExceeded("alpha_" + std::to_string(n) + " not computed");
    return alpha_seq[n];
  }
};

namespace detail {

// Rational termination vs mantissa exhaustion: each level spends about
// log2(a_n) mantissa bits, so a tiny alpha_n with most of the mantissa
// already consumed is noise, not a rational hit.
template <class R>
bool precision_spent(double consumed_bits) {
  return consumed_bits + 40 > 0.9 * mantissa_bits<R>();
}

}  // namespace detail

template <class R>
ModifiedCF<R> expand_cf(const R& alpha, std::size_t depth) {
  ModifiedCF<R> cf;
  R a0 = nearest_int(alpha);
  cf.a.push_back(a0.template convert_to<BigInt>());
  cf.eps.push_back(alpha - a0 >= 0 ? 1 : -1);
  R al = abs(alpha - a0);
  cf.alpha_seq.push_back(al);

  const R floor_rational = ldexp(R(1), -40);
  double consumed = 1;
  for (std::size_t n = 1; n <= depth; ++n) {
    if (detail::precision_spent<R>(consumed))
      throw PrecisionExhausted("mantissa spent after " + std::to_string(cf.depth) +
                               " levels; retry with more bits");
    if (al < floor_rational) {
      cf.terminated = true;
      return cf;
    }
    R y = R(1) / al;
    R an = nearest_int(y);
    int e = y - an >= 0 ? 1 : -1;
    al = abs(y - an);
    cf.a.push_back(an.template convert_to<BigInt>());
    cf.eps.push_back(e);
    cf.alpha_seq.push_back(al);
    cf.depth = n;
    consumed += static_cast<double>(log2(an < 2 ? R(2) : an));
  }
  return cf;
}

// Climbs the precision ladder until the requested depth fits. Starts at the
// precision of R and doubles on PrecisionExhausted (cap 1024 bits).
template <class R>
ModifiedCF<R> expand_cf_auto(const R& alpha, std::size_t depth) {
  try {
    return expand_cf(alpha, depth);
  } catch (const PrecisionExhausted&) {
    if constexpr (std::is_same_v<R, Real1024>) {
      throw;
    } else {
      using Wider = std::conditional_t<
          std::is_same_v<R, Real64>, Real128,
          std::conditional_t<std::is_same_v<R, Real128>, Real256,
                             std::conditional_t<std::is_same_v<R, Real256>, Real512, Real1024>>>;
      ModifiedCF<Wider> wide = expand_cf_auto(Wider(alpha.str()), depth);
      ModifiedCF<R> out;
      out.a = wide.a;
      out.eps = wide.eps;
      out.depth = wide.depth;
      out.terminated = wide.terminated;
      for (const auto& x : wide.alpha_seq) out.alpha_seq.push_back(R(x.str()));
      return out;
    }
  }
}

template <class R>
R reconstruct(const ModifiedCF<R>& cf) {
  if (cf.a.empty()) return R(0);
  std::size_t n = cf.a.size() - 1;
  R x(0);  // plays alpha_i = 1/(a_{i+1} + eps_{i+1} alpha_{i+1})
  for (std::size_t i = n; i >= 1; --i) {
    x = R(1) / (R(cf.a[i].str()) + R(cf.eps[i]) * x);
  }
  return R(cf.a[0].str()) + R(cf.eps[0]) * x;
}

// Convergent denominators/numerators. The plain recurrence
// q_{n+1} = a_{n+1} q_n + q_{n-1} is the default; the sign-aware variant
// q_{n+1} = a_{n+1} q_n + eps_n q_{n-1} sits behind a flag.
struct Approximants {
  std::vector<BigInt> q;  // q_0 = 1, q_1 = a_1
  std::vector<BigInt> p;
  bool eps_aware = false;
};

template <class R>
Approximants approximants(const ModifiedCF<R>& cf, bool eps_aware = false) {
  if (cf.a.size() < 2) throw DepthExceeded("approximants need depth >= 1");
  Approximants ap;
  ap.eps_aware = eps_aware;
  ap.q = {BigInt(1), cf.a[1]};
  ap.p = {cf.a[0], cf.a[0] * cf.a[1] + BigInt(cf.eps[0])};
  for (std::size_t n = 1; n + 1 < cf.a.size(); ++n) {
    BigInt carry_q = eps_aware ? BigInt(cf.eps[n]) * ap.q[n - 1] : ap.q[n - 1];
    BigInt carry_p = eps_aware ? BigInt(cf.eps[n]) * ap.p[n - 1] : ap.p[n - 1];
    ap.q.push_back(cf.a[n + 1] * ap.q[n] + carry_q);
    ap.p.push_back(cf.a[n + 1] * ap.p[n] + carry_p);
  }
  return ap;
}

// First index where the plain and sign-aware denominator sequences part ways,
// with the relative gap there; nullopt when they agree to full depth.
template <class R>
std::optional<std::pair<std::size_t, double>> q_recurrence_divergence(const ModifiedCF<R>& cf) {
  if (cf.a.size() < 2) return std::nullopt;
  Approximants plain = approximants(cf, false);
  Approximants aware = approximants(cf, true);
  for (std::size_t i = 0; i < plain.q.size(); ++i) {
    if (plain.q[i] != aware.q[i]) {
      double gap = static_cast<double>(BigInt(plain.q[i] - aware.q[i]).convert_to<double>()) /
                   plain.q[i].convert_to<double>();
      return std::make_pair(i, gap);
    }
  }
  return std::nullopt;
}

template <class R>
R log_of_bigint(const BigInt& v) {
  return log(R(v.str()));
}

// Sums, products and their duals needed by the Brjuno-type classifiers.
//   partial_sums[n]  = sum_{j<=n} log(q_{j+1})/q_j
//   beta[j]          = alpha_0 ... alpha_j  (beta[-1] = 1 is implicit)
//   alt_sums[n]      = sum_{j<=n} beta_{j-1} log(1/alpha_j)
//   log_product[k-1] = log( alpha_1 alpha_2^{alpha_1} ... alpha_k^{alpha_1..alpha_{k-1}} )
//   m_dual[j]        = (alpha_1..alpha_{j-1}) * q_j
template <class R>
struct BrjunoLedger {
  std::vector<R> partial_sums;
  std::vector<R> beta;
  std::vector<R> alt_sums;
  std::vector<R> log_product;
  std::vector<R> m_dual;
  int precision_bits = mantissa_bits<R>();

  R brjuno_partial(std::size_t n) const {
    if (n >= partial_sums.size()) throw DepthExceeded("brjuno_partial depth");
    return partial_sums[n];
  }
  R log_product_sequence(std::size_t k) const {
    if (k == 0 || k > log_product.size()) throw DepthExceeded("product_sequence depth");
    return log_product[k - 1];
  }
  R product_sequence(std::size_t k) const { return exp(log_product_sequence(k)); }
};

template <class R>
BrjunoLedger<R> brjuno_ledger(const ModifiedCF<R>& cf) {
  BrjunoLedger<R> lg;
  if (cf.a.size() < 2) return lg;
  Approximants ap = approximants(cf);
  for (std::size_t j = 0; j + 1 < ap.q.size(); ++j) {
    R summand = log_of_bigint<R>(ap.q[j + 1]) / R(ap.q[j].str());
    lg.partial_sums.push_back((lg.partial_sums.empty() ? R(0) : lg.partial_sums.back()) + summand);
  }
  R beta = R(1);
  R beta_prime = R(1);  // alpha_1 ... alpha_{j-1}
  for (std::size_t j = 0; j < cf.alpha_seq.size(); ++j) {
    const R& aj = cf.alpha_seq[j];
    if (aj == R(0)) break;
    lg.alt_sums.push_back((lg.alt_sums.empty() ? R(0) : lg.alt_sums.back()) + beta * log(R(1) / aj));
    beta *= aj;
    lg.beta.push_back(beta);
    if (j >= 1) {
      lg.log_product.push_back((lg.log_product.empty() ? R(0) : lg.log_product.back()) +
                               beta_prime * log(aj));
      if (j < ap.q.size()) lg.m_dual.push_back(beta_prime * R(ap.q[j].str()));
      beta_prime *= aj;
    }
  }
  return lg;
}

// ---------------------------------------------------------------------------
// Synthetic expansions. Given explicit partial quotients (all eps = +1) and an
// optional iterated-exponential tail log a_{j+1} = g * q_j, builds the same
// ledger. Tail levels where a_{j+1} no longer fits the mantissa are handled by
// saturated recurrences: the dropped corrections are below e^{-SAT} with
// SAT chosen so e^{-SAT} << 2^{-mantissa}, i.e. exact at working precision.
// ---------------------------------------------------------------------------
template <class R>
struct SyntheticCF {
  std::vector<BigInt> prefix;  // a_1, a_2, ... (a_0 = 0)
  std::optional<R> tail_ratio; // g, if the tail is a_{j+1} = ceil(exp(g q_j))
  std::size_t levels = 32;
};

template <class R>
BrjunoLedger<R> brjuno_ledger(const SyntheticCF<R>& syn) {
  const R SAT = R(0.55 * mantissa_bits<R>() * 0.6931471805599453);
  const std::size_t N = syn.levels;
  std::vector<R> log_a;   // log a_1 ..
  std::vector<R> log_q;   // log q_0 ..
  log_q.push_back(R(0));
  for (const BigInt& ai : syn.prefix) log_a.push_back(log_of_bigint<R>(ai));
  if (!log_a.empty()) log_q.push_back(log_a[0]);
  for (std::size_t i = 1; i < log_a.size(); ++i)
    log_q.push_back(log_a[i] + log_q[i] + log1p(exp(log_q[i - 1] - log_a[i] - log_q[i])));

  bool saturated = false;
  while (log_a.size() < N + 2) {
    if (!syn.tail_ratio) break;
    const R g = *syn.tail_ratio;
    std::size_t j = log_a.size();          // defining a_{j+1}, needs q_j
    if (saturated || log_q[j] >= SAT) {
      saturated = true;
      log_a.push_back(std::numeric_limits<R>::infinity());
      log_q.push_back(std::numeric_limits<R>::infinity());
      continue;
    }
    R qj = exp(log_q[j]);
    R la = g * qj;
    if (la < R(40)) {  // a small enough to take the ceiling exactly
      la = log(ceil(exp(la)));
    }
    log_a.push_back(la);
    log_q.push_back(la + log_q[j] + log1p(exp(log_q[j - 1] - la - log_q[j])));
  }

  const R inf = std::numeric_limits<R>::infinity();
  BrjunoLedger<R> lg;
  const R g = syn.tail_ratio ? *syn.tail_ratio : R(0);

  // partial sums of log(q_{j+1})/q_j with the saturated form g + log(q_j)/q_j
  R acc = R(0);
  for (std::size_t j = 0; j + 1 < log_q.size() && j <= N; ++j) {
    R summand;
    if (log_q[j + 1] == inf) {
      summand = (log_q[j] == inf) ? g : g + log_q[j] * exp(-log_q[j]);
    } else {
      summand = log_q[j + 1] * exp(-log_q[j]);
    }
    acc += summand;
    lg.partial_sums.push_back(acc);
  }

  // log alpha_j = -log a_{j+1} - log1p(alpha_{j+1}/a_{j+1}); the correction
  // uses the first-order tail alpha_{j+1} ~ 1/a_{j+2}.
  std::vector<R> log_alpha(N + 2, -inf);  // index j >= 0
  for (std::size_t j = 0; j + 1 <= N + 1 && j < log_a.size(); ++j) {
    R la1 = log_a[j];  // log a_{j+1}
    if (la1 == inf) { log_alpha[j] = -inf; continue; }
    R la2 = (j + 1 < log_a.size()) ? log_a[j + 1] : inf;
    R appr = la2 == inf ? R(0) : exp(-la2 - la1);
    log_alpha[j] = -la1 - log1p(appr);
  }
  const R alpha0 = exp(log_alpha[0]);

  // product terms t_j = beta'_{j-1} log alpha_j; duality m_j = beta'_{j-1} q_j
  // freezes once the tail saturates.
  R logP = R(0), log_beta = R(0), m = R(0);
  R alt = -log_alpha[0];  // beta_{-1} log(1/alpha_0)
  lg.alt_sums.push_back(alt);
  bool frozen = false;
  for (std::size_t j = 1; j <= N; ++j) {
    R t;
    if (!frozen && log_alpha[j] != -inf && log_q[j] != inf) {
      t = exp(log_beta) * log_alpha[j];
      m = exp(log_beta + log_q[j]);
      log_beta += log_alpha[j];
      if (j + 1 <= N && (log_alpha[j + 1] == -inf || log_q[j + 1] == inf)) frozen = true;
    } else {
      t = -g * m;
    }
    logP += t;
    alt += -alpha0 * t;  // beta_{j-1} log(1/alpha_j) = -alpha_0 t_j
    lg.log_product.push_back(logP);
    lg.m_dual.push_back(m);
    lg.alt_sums.push_back(alt);
    lg.beta.push_back(frozen ? R(0) : alpha0 * exp(log_beta));
  }
  return lg;
}

template <class R>
bool is_irr_N(const ModifiedCF<R>& cf, const BigInt& N) {
  for (std::size_t i = 1; i < cf.a.size(); ++i)
    if (cf.a[i] < N) return false;
  return true;
}

// ---------------------------------------------------------------------------
// JSON serialization (deterministic field order).
// ---------------------------------------------------------------------------
template <class R>
nlohmann::ordered_json cf_to_json(const ModifiedCF<R>& cf, const BrjunoLedger<R>& lg) {
  nlohmann::ordered_json j;
  j["a"] = nlohmann::ordered_json::array();
  for (const auto& v : cf.a) j["a"].push_back(v.str());
  j["eps"] = cf.eps;
  j["alpha"] = nlohmann::ordered_json::array();
  for (const auto& v : cf.alpha_seq) j["alpha"].push_back(to_decimal_string(v));
  j["q"] = nlohmann::ordered_json::array();
  if (cf.a.size() >= 2) {
    for (const auto& v : approximants(cf).q) j["q"].push_back(v.str());
  }
  j["brjuno_partials"] = nlohmann::ordered_json::array();
  for (const auto& v : lg.partial_sums) j["brjuno_partials"].push_back(to_decimal_string(v));
  j["product_seq"] = nlohmann::ordered_json::array();
  for (const auto& v : lg.log_product) j["product_seq"].push_back(to_decimal_string(exp(v)));
  j["terminated"] = cf.terminated;
  j["depth"] = cf.depth;
  j["precision_bits"] = mantissa_bits<R>();
  return j;
}

}  // namespace fatoulab
