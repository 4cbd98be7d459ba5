#include "caloric/numeric.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "caloric/error.hpp"

namespace caloric {

double compensated_sum(std::span<const double> terms) {
    CompensatedSum acc;
    for (double x : terms) {
        acc.add(x);
    }
    return acc.value();
}

std::size_t thread_budget() {
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("CALORIC_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) {
            n = std::min(n, static_cast<std::size_t>(cap));
        }
    }
    return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min(thread_budget(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) {
                return;
            }
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) {
        pool.emplace_back(run);
    }
    run();
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    require(x.size() == y.size() && x.size() >= 2, ErrorKind::Argument, "fit_line needs >= 2 paired samples");
    const double n = static_cast<double>(x.size());
    const double mx = compensated_sum(x) / n;
    const double my = compensated_sum(y) / n;
    CompensatedSum sxx, sxy, syy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    require(sxx.value() > 0.0, ErrorKind::Degenerate, "fit_line: abscissae are all equal");
    LinearFit fit;
    fit.slope = sxy.value() / sxx.value();
    fit.intercept = my - fit.slope * mx;
    CompensatedSum ssr;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.slope * x[i] + fit.intercept);
        ssr += r * r;
    }
    const double sst = syy.value();
    const double scale = std::max(1.0, std::abs(my));
    fit.r2 = sst <= 1e-24 * scale * scale * n ? 1.0 : std::clamp(1.0 - ssr.value() / sst, 0.0, 1.0);
    return fit;
}

double extrapolate_to_zero(std::span<const double> x, std::span<const double> y) {
    require(x.size() == y.size() && !x.empty(), ErrorKind::Argument, "extrapolate_to_zero needs samples");
    std::vector<double> p(y.begin(), y.end());
    const std::size_t n = p.size();
    for (std::size_t m = 1; m < n; ++m) {
        for (std::size_t i = 0; i + m < n; ++i) {
            const double xi = x[i];
            const double xim = x[i + m];
            p[i] = (xim * p[i] - xi * p[i + 1]) / (xim - xi);
        }
    }
    return p[0];
}

double trapezoid_on(std::span<const double> times, std::span<const double> g, double a, double b) {
    require(times.size() == g.size() && times.size() >= 2, ErrorKind::Argument, "trapezoid_on: size mismatch");
    require(a < b, ErrorKind::Argument, "trapezoid_on: need a < b");
    const double tol = 1e-12 * std::max(1.0, std::abs(b));
    require(times.front() <= a + tol && times.back() >= b - tol, ErrorKind::Coverage,
            "time samples do not cover the integration interval");
    auto value_at = [&](double t) {
        auto it = std::lower_bound(times.begin(), times.end(), t);
        if (it == times.end()) {
            return g.back();
        }
        const std::size_t i = static_cast<std::size_t>(it - times.begin());
        if (i == 0 || std::abs(times[i] - t) <= tol) {
            return g[i];
        }
        const double w = (t - times[i - 1]) / (times[i] - times[i - 1]);
        return (1.0 - w) * g[i - 1] + w * g[i];
    };
    std::vector<double> nodes{a};
    std::vector<double> vals{value_at(a)};
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] > a + tol && times[i] < b - tol) {
            nodes.push_back(times[i]);
            vals.push_back(g[i]);
        }
    }
    nodes.push_back(b);
    vals.push_back(value_at(b));
    CompensatedSum acc;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        acc += 0.5 * (nodes[i + 1] - nodes[i]) * (vals[i] + vals[i + 1]);
    }
    return acc.value();
}

}  // namespace caloric
