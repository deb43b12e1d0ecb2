// quadrature.hpp - globally adaptive Gauss-Kronrod integration over a breakpoint set
//
// Uses Boost's Gauss-Kronrod rules for each segment. Convergence is declared when
// the summed error estimate is below tol * max(|I|, L1), which stays meaningful for
// oscillatory integrands whose value is small relative to their L1 norm.

#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace mzbath::detail {

struct QuadratureResult {
    double value{0.0};
    double error{0.0};
    double l1{0.0};
    bool converged{false};
};

/// A piece of the integration range in local coordinates: the integrand is sampled at
/// origin + v for v in [a, b]. Keeping v small preserves absolute accuracy of the nodes
/// when the integrand's phase depends on the global abscissa.
struct Piece {
    double origin;
    double a;
    double b;
    long tag;  // passed through to the integrand
};

/// Integrates f(piece, v) over every piece with global bisection of the worst segment.
template <unsigned Points, class F>
QuadratureResult integrate_pieces(F&& f, std::span<const Piece> pieces, double tol,
                                  std::size_t max_extra_splits = 4000) {
    using Rule = boost::math::quadrature::gauss_kronrod<double, Points>;
    struct Segment {
        std::size_t piece;
        double a, b, value, error, l1;
        bool operator<(const Segment& other) const { return error < other.error; }
    };
    auto evaluate = [&](std::size_t k, double a, double b) {
        Segment s{k, a, b, 0.0, 0.0, 0.0};
        const Piece& p = pieces[k];
        s.value = Rule::integrate([&](double v) { return f(p, v); }, a, b, 0, 0.0, &s.error, &s.l1);
        return s;
    };

    std::priority_queue<Segment> heap;
    QuadratureResult out;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        if (!(pieces[k].b > pieces[k].a)) continue;
        auto s = evaluate(k, pieces[k].a, pieces[k].b);
        out.value += s.value;
        out.error += s.error;
        out.l1 += s.l1;
        heap.push(s);
    }

    auto target = [&] { return tol * std::max(std::abs(out.value), out.l1); };
    for (std::size_t split = 0; split < max_extra_splits && !heap.empty() && out.error > target();
         ++split) {
        const Segment worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;
        heap.pop();
        const auto left = evaluate(worst.piece, worst.a, mid);
        const auto right = evaluate(worst.piece, mid, worst.b);
        out.value += left.value + right.value - worst.value;
        out.error += left.error + right.error - worst.error;
        out.l1 += left.l1 + right.l1 - worst.l1;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum from the leaves to drop accumulated update roundoff.
    out.value = out.error = out.l1 = 0.0;
    while (!heap.empty()) {
        const auto& s = heap.top();
        out.value += s.value;
        out.error += s.error;
        out.l1 += s.l1;
        heap.pop();
    }
    out.converged = out.error <= target();
    return out;
}

/// Globally adaptive integration of f(x) over consecutive breakpoint intervals.
template <unsigned Points, class F>
QuadratureResult integrate_adaptive(F&& f, std::span<const double> breakpoints, double tol,
                                    std::size_t max_extra_splits = 4000) {
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
        pieces.push_back({0.0, breakpoints[i], breakpoints[i + 1], 0});
    return integrate_pieces<Points>([&](const Piece&, double x) { return f(x); }, pieces, tol,
                                    max_extra_splits);
}

/// Sorted, de-duplicated breakpoints in [a, b] including both ends.
inline std::vector<double> make_breakpoints(double a, double b, std::vector<double> interior) {
    interior.push_back(a);
    interior.push_back(b);
    std::erase_if(interior, [&](double x) { return !(x >= a && x <= b); });
    std::sort(interior.begin(), interior.end());
    interior.erase(std::unique(interior.begin(), interior.end()), interior.end());
    return interior;
}

}  // namespace mzbath::detail
