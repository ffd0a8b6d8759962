#include "subsup/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "subsup/csv.hpp"
#include "subsup/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace subsup {

const char* algo_name(Algo a) {
  switch (a) {
    case Algo::ratio_marginal: return "ratio-marginal";
    case Algo::greedy_f: return "greedy-f";
    case Algo::greedy_g: return "greedy-g";
    case Algo::ratio_fg: return "ratio-fg";
    case Algo::random_pick: return "random";
  }
  return "?";
}

namespace {

constexpr double kTieRel = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool within_tie(double a, double b) {
  return std::fabs(a - b) <= kTieRel * std::max(std::fabs(a), std::fabs(b));
}

// Strictly better in a maximization sense: larger and not within the
// relative tie band (ties fall back to scan order, i.e. lowest index).
bool strictly_greater(double a, double b) { return a > b && !within_tie(a, b); }
bool strictly_less(double a, double b) { return a < b && !within_tie(a, b); }

struct Scored {
  int v = -1;
  double num = 0.0;  // f part (marginal or total)
  double den = 0.0;  // g part
};

// Ranks (num, den) pairs as the ratio num/den. Zero-denominator candidates
// with positive numerator form an infinite class ranked by numerator. Pairs
// with num <= 0 and den <= 0 count as ratio zero. Comparison of finite
// ratios cross-multiplies to avoid division noise; near-equal products fall
// to scan order.
class RatioPicker {
 public:
  void offer(const Scored& c) {
    bool is_free = c.den <= 0.0 && c.num > 0.0;
    if (is_free) {
      if (!has_free_ || strictly_greater(c.num, free_.num)) {
        free_ = c;
        has_free_ = true;
      }
      return;
    }
    double num = c.num, den = c.den;
    if (den <= 0.0) {  // num <= 0 as well: treat as ratio 0
      num = 0.0;
      den = 1.0;
    }
    if (!has_finite_) {
      finite_ = c;
      finite_num_ = num;
      finite_den_ = den;
      has_finite_ = true;
      return;
    }
    double lhs = num * finite_den_;
    double rhs = finite_num_ * den;
    if (strictly_greater(lhs, rhs)) {
      finite_ = c;
      finite_num_ = num;
      finite_den_ = den;
    }
  }

  bool has_pick() const { return has_free_ || has_finite_; }

  Scored pick() const { return has_free_ ? free_ : finite_; }

 private:
  bool has_free_ = false;
  bool has_finite_ = false;
  Scored free_;
  Scored finite_;
  double finite_num_ = 0.0;
  double finite_den_ = 1.0;
};

double ratio_of(double num, double den) {
  if (den <= 0.0) return num > 0.0 ? kInf : 0.0;
  return num / den;
}

GreedyTrace run_engine(Algo algo, const SetFunction& f, const SetFunction& g, double theta,
                       StopPolicy policy, std::uint64_t seed) {
  if (f.n() != g.n())
    throw std::invalid_argument("greedy: objective and cost ground sets differ");
  if (!(theta > 0.0)) throw std::invalid_argument("greedy: theta must be positive");

  int n = f.n();
  GreedyTrace trace;
  trace.theta = theta;
  trace.policy = policy;
  trace.universe = n;

  std::vector<int> candidates;
  candidates.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    Subset single(n);
    single.add(v);
    if (g.value(single) > theta)
      trace.dropped.push_back(v);
    else
      candidates.push_back(v);
  }
  if (candidates.empty())
    throw std::runtime_error("greedy: empty after preprocessing (every element violates theta)");

  Subset s(n);
  std::vector<char> selected(static_cast<std::size_t>(n), 0);
  Rng rng(seed);
  bool total_ratio = algo == Algo::ratio_fg;

  std::vector<int> remaining;
  std::vector<Scored> scored;
  while (true) {
    remaining.clear();
    for (int v : candidates)
      if (!selected[static_cast<std::size_t>(v)]) remaining.push_back(v);
    if (remaining.empty()) break;

    int pick = -1;
    double pick_num = 0.0, pick_den = 0.0;
    if (algo == Algo::random_pick) {
      pick = remaining[rng.below(remaining.size())];
      pick_num = f.marginal(pick, s);
      pick_den = g.marginal(pick, s);
    } else {
      scored.assign(remaining.size(), Scored{});
      std::int64_t count = static_cast<std::int64_t>(remaining.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
      for (std::int64_t i = 0; i < count; ++i) {
        int v = remaining[static_cast<std::size_t>(i)];
        Scored& c = scored[static_cast<std::size_t>(i)];
        c.v = v;
        if (total_ratio) {
          Subset sv = s.with(v);
          c.num = f.value(sv);
          c.den = g.value(sv);
        } else {
          c.num = f.marginal(v, s);
          c.den = g.marginal(v, s);
        }
      }

      if (algo == Algo::greedy_f) {
        for (const Scored& c : scored)
          if (pick < 0 || strictly_greater(c.num, pick_num)) {
            pick = c.v;
            pick_num = c.num;
            pick_den = c.den;
          }
      } else if (algo == Algo::greedy_g) {
        for (const Scored& c : scored)
          if (pick < 0 || strictly_less(c.den, pick_den)) {
            pick = c.v;
            pick_num = c.num;
            pick_den = c.den;
          }
      } else {
        RatioPicker picker;
        for (const Scored& c : scored) {
          if (algo == Algo::ratio_marginal && c.num <= 0.0) continue;  // zero-value: skip
          picker.offer(c);
        }
        if (!picker.has_pick()) break;
        Scored c = picker.pick();
        pick = c.v;
        pick_num = c.num;
        pick_den = c.den;
      }
    }
    if (pick < 0) break;

    Subset sv = s.with(pick);
    double g_new = g.value(sv);
    if (policy.kind == StopPolicy::Kind::before_overflow && g_new > theta) break;

    double f_new = f.value(sv);
    s = sv;
    selected[static_cast<std::size_t>(pick)] = 1;
    trace.steps.push_back(GreedyStep{pick, f_new, g_new, ratio_of(pick_num, pick_den)});

    if (policy.kind == StopPolicy::Kind::first_overflow && g_new > theta) break;
    if (policy.kind == StopPolicy::Kind::continue_to && g_new >= policy.beta_plus * theta) break;
  }

  trace.returned_prefix = trace.steps.size();
  return trace;
}

}  // namespace

GreedyTrace run_ratio_marginal(const SetFunction& f, const SetFunction& g, double theta,
                               StopPolicy policy) {
  return run_engine(Algo::ratio_marginal, f, g, theta, policy, 0);
}

GreedyTrace run_baseline(Algo kind, const SetFunction& f, const SetFunction& g, double theta,
                         StopPolicy policy, std::uint64_t seed) {
  return run_engine(kind, f, g, theta, policy, seed);
}

double empirical_beta(const GreedyTrace& trace, std::size_t step) {
  if (step >= trace.steps.size()) throw std::out_of_range("empirical_beta: step outside trace");
  return trace.steps[step].g_value / trace.theta;
}

std::string trace_csv(const GreedyTrace& trace, const std::string& algorithm, bool header) {
  std::ostringstream out;
  if (header) out << "algorithm,step,element,f,g,ratio,beta\n";
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const GreedyStep& st = trace.steps[i];
    out << algorithm << ',' << (i + 1) << ',' << st.element << ',' << fmt_g17(st.f_value) << ','
        << fmt_g17(st.g_value) << ',' << fmt_g17(st.ratio) << ','
        << fmt_g17(st.g_value / trace.theta) << '\n';
  }
  return out.str();
}

}  // namespace subsup
