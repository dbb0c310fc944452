#include "civet/stability.hpp"

#include "civet/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace civet {

namespace {

constexpr double kDegenerateVariance = 1e-20;

std::vector<double> average_ranks(const std::vector<double>& values) {
    const size_t n = values.size();
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && values[idx[j + 1]] == values[idx[i]]) ++j;
        double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (size_t k = i; k <= j; ++k) ranks[idx[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

double weighted_pearson(const std::vector<double>& x, const std::vector<double>& y,
                        const std::vector<double>& w) {
    double wsum = 0, mx = 0, my = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        wsum += w[i];
        mx += w[i] * x[i];
        my += w[i] * y[i];
    }
    mx /= wsum;
    my /= wsum;
    double cov = 0, vx = 0, vy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        cov += w[i] * dx * dy;
        vx += w[i] * dx * dx;
        vy += w[i] * dy * dy;
    }
    if (vx / wsum < kDegenerateVariance || vy / wsum < kDegenerateVariance) {
        throw Error(errc::degenerate_ranks, "all ranks tied under the given weights");
    }
    return cov / std::sqrt(vx * vy);
}

} // namespace

double weighted_spearman(const std::map<std::string, double>& shares_a,
                         const std::map<std::string, double>& shares_b,
                         const std::vector<std::string>& domains,
                         const std::map<std::string, double>& weights) {
    if (domains.empty()) throw Error(errc::invalid_argument, "empty domain list");

    std::vector<double> sa, sb, w;
    sa.reserve(domains.size());
    sb.reserve(domains.size());
    w.reserve(domains.size());
    for (const std::string& d : domains) {
        auto ia = shares_a.find(d);
        auto ib = shares_b.find(d);
        if (ia == shares_a.end() || ib == shares_b.end()) {
            throw Error(errc::invalid_argument, "domain " + d + " missing a share");
        }
        auto iw = weights.find(d);
        if (iw == weights.end() || !(iw->second > 0) || !std::isfinite(iw->second)) {
            throw Error(errc::invalid_argument, "domain " + d + " needs a positive finite weight");
        }
        sa.push_back(ia->second);
        sb.push_back(ib->second);
        w.push_back(iw->second);
    }
    return weighted_pearson(average_ranks(sa), average_ranks(sb), w);
}

RankStabilityResult rank_stability_pair(const SampleMetrics& a, const SampleMetrics& b,
                                        const std::set<std::string>& domains, int b_replicates,
                                        double alpha, uint64_t seed,
                                        StabilityThresholds thresholds, Exec exec) {
    if (domains.size() < 3) {
        throw Error(errc::too_few_domains,
                    "need at least three domains, got " + std::to_string(domains.size()));
    }

    std::vector<std::string> ordered(domains.begin(), domains.end());
    const size_t d = ordered.size();
    std::vector<double> sa(d, 0.0), sb(d, 0.0), w(d, 0.0);
    auto share_of = [](const SampleMetrics& m, const std::string& dom) {
        auto it = m.per_domain.find(dom);
        return it == m.per_domain.end() ? 0.0 : it->second.share;
    };
    for (size_t i = 0; i < d; ++i) {
        sa[i] = share_of(a, ordered[i]);
        sb[i] = share_of(b, ordered[i]);
        // zero-share entries stay ranked, with a floor weight so they cannot
        // silently drop out of the pair
        w[i] = std::max((sa[i] + sb[i]) / 2.0, 1e-15);
    }

    std::vector<size_t> indices(d);
    std::iota(indices.begin(), indices.end(), 0);
    // Each replicate treats the drawn domains as a fresh sample: a domain
    // drawn k times carries k times its share (and weight) into the
    // recomputed correlation. The point estimate is the identity draw.
    // Near rho = 1 this recomputation skews the replicate distribution
    // upward, so the lower percentile can exceed the point estimate; that is
    // a boundary property of the percentile interval, not an error.
    auto statistic = [&](const std::vector<size_t>& drawn) {
        std::vector<double> multiplicity(d, 0.0);
        for (size_t i : drawn) multiplicity[i] += 1.0;
        std::vector<double> xa, xb, xw;
        xa.reserve(drawn.size());
        xb.reserve(drawn.size());
        xw.reserve(drawn.size());
        for (size_t i = 0; i < d; ++i) {
            if (multiplicity[i] == 0.0) continue;
            xa.push_back(multiplicity[i] * sa[i]);
            xb.push_back(multiplicity[i] * sb[i]);
            xw.push_back(multiplicity[i] * w[i]);
        }
        return weighted_pearson(average_ranks(xa), average_ranks(xb), xw);
    };

    RankStabilityResult res;
    res.sample_a = a.key;
    res.sample_b = b.key;
    res.n_domains = d;
    res.alpha = alpha;
    res.seed = seed;

    GenericCI ci = bootstrap_generic(indices, statistic, b_replicates, alpha, seed,
                                     /*allow_undefined=*/true, exec);
    res.rho = ci.point;
    res.ci_lower = ci.lower;
    res.ci_upper = ci.upper;
    res.ci_width = ci.width;
    res.replicates = ci.replicates;
    res.excluded_replicates = ci.excluded;
    res.sufficient = res.ci_width <= thresholds.sufficiency;
    res.stable = res.sufficient && res.rho >= thresholds.stability;
    return res;
}

StabilitySeries rank_stability_series(const std::vector<SampleMetrics>& ordered,
                                      const std::set<std::string>& domains, int b_replicates,
                                      double alpha, uint64_t seed,
                                      StabilityThresholds thresholds, Exec exec) {
    if (ordered.size() < 2) {
        throw Error(errc::invalid_argument, "need at least two samples in job order");
    }

    auto run_pair = [&](const SampleMetrics& a, const SampleMetrics& b, uint64_t pair_seed) {
        try {
            return rank_stability_pair(a, b, domains, b_replicates, alpha, pair_seed, thresholds,
                                       exec);
        } catch (const Error& e) {
            RankStabilityResult failed;
            failed.sample_a = a.key;
            failed.sample_b = b.key;
            failed.rho = std::numeric_limits<double>::quiet_NaN();
            failed.n_domains = domains.size();
            failed.alpha = alpha;
            failed.seed = pair_seed;
            failed.error = e.what();
            return failed;
        }
    };

    StabilitySeries series;
    for (size_t i = 0; i + 1 < ordered.size(); ++i) {
        series.consecutive.push_back(
            run_pair(ordered[i], ordered[i + 1], split_stream(seed, i)));
    }
    series.span = ordered.size() == 2
                      ? series.consecutive.front()
                      : run_pair(ordered.front(), ordered.back(),
                                 split_stream(seed, 0x5ba60000ull + ordered.size()));

    double rho_sum = 0, width_sum = 0;
    size_t sufficient = 0;
    for (const auto& pair : series.consecutive) {
        if (pair.sufficient) {
            ++sufficient;
            rho_sum += pair.rho;
            width_sum += pair.ci_width;
        }
    }
    if (sufficient > 0) {
        series.mean_rho = rho_sum / static_cast<double>(sufficient);
        series.mean_ci_width = width_sum / static_cast<double>(sufficient);
    }
    return series;
}

} // namespace civet
