#pragma once
#include <algorithm>
#include <cmath>
#include <vector>

namespace grn {

// Composite Simpson on [a,b] with n panels (2n+1 evaluations).
template <class F>
auto simpson(F&& f, double a, double b, int n) {
  using R = decltype(f(a));
  const double half = (b - a) / (2.0 * n);
  R acc = f(a) + f(b);
  for (int i = 1; i < 2 * n; ++i) {
    acc += f(a + half * i) * (i % 2 ? 4.0 : 2.0);
  }
  return acc * (half / 3.0);
}

// Composite Simpson with mandatory panel boundaries at the given cut points
// (integrand kinks). Panels are distributed across segments proportionally to
// segment length, at least 2 per segment; total may slightly exceed n_panels.
template <class F>
auto simpson_split(F&& f, double a, double b, std::vector<double> cuts, int n_panels) {
  cuts.push_back(a);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.erase(std::remove_if(cuts.begin(), cuts.end(),
                            [&](double c) { return c < a || c > b; }),
             cuts.end());
  using R = decltype(f(a));
  R acc = R{};
  for (size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double lo = cuts[s], hi = cuts[s + 1];
    int n = std::max(2, (int)std::lround(n_panels * (hi - lo) / (b - a)));
    acc += simpson(f, lo, hi, n);
  }
  return acc;
}

}  // namespace grn
