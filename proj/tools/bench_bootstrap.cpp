// Benchmark: serial reference kernels vs the OpenMP kernels, with a
// bit-exactness check between them. Covers the bootstrap engine (single
// domain, full frequently-cited set, convergence grid) and dataset synthesis.

#include "civet/dataset.hpp"
#include "civet/dispersion.hpp"
#include "civet/metrics.hpp"
#include "civet/resample.hpp"
#include "civet/stability.hpp"
#include "civet/synth.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

using civet::Exec;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    fn(); // warm-up
    auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count() / reps;
}

void report_line(const char* name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-28s %10.2f ms %10.2f ms %7.2fx   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, identical ? "bit-identical" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    int reps = argc > 1 ? std::atoi(argv[1]) : 3;
    const int b = 1000;
    const uint64_t seed = 99;

#ifdef _OPENMP
    std::printf("threads: %d, replicates: %d, reps per timing: %d\n", omp_get_max_threads(), b,
                reps);
#else
    std::printf("built without OpenMP; parallel lane == serial lane\n");
#endif
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    civet::SynthConfig cfg = civet::preset("perplexity-like");
    cfg.seed = seed;

    // dataset synthesis across samples
    auto [dataset_serial, truth_serial] = civet::generate(cfg, Exec::serial);
    auto [dataset_parallel, truth_parallel] = civet::generate(cfg, Exec::parallel);
    {
        double ts = time_ms([&] { civet::generate(cfg, Exec::serial); }, reps);
        double tp = time_ms([&] { civet::generate(cfg, Exec::parallel); }, reps);
        report_line("synth generate (9x200)", ts, tp,
                    dataset_serial.same_content(dataset_parallel));
    }

    std::vector<const civet::Sample*> samples;
    for (const auto& [key, sample] : dataset_serial.samples) samples.push_back(&sample);
    const civet::Sample& baseline = *samples.front();
    civet::FrequentlyCitedSet fc = civet::classify_frequently_cited(samples);
    std::printf("  (%zu frequently cited domains, %zu responses)\n", fc.domains.size(),
                baseline.n_responses());

    // single-domain bootstrap
    const std::string top = civet::rank_share_table(civet::compute_sample_metrics(baseline))
                                .rows.front()
                                .domain;
    auto one_s = civet::bootstrap_metric_ci(baseline, civet::Metric::share, top, b, 0.05, seed,
                                            Exec::serial);
    auto one_p = civet::bootstrap_metric_ci(baseline, civet::Metric::share, top, b, 0.05, seed,
                                            Exec::parallel);
    {
        double ts = time_ms(
            [&] {
                civet::bootstrap_metric_ci(baseline, civet::Metric::share, top, b, 0.05, seed,
                                           Exec::serial);
            },
            reps);
        double tp = time_ms(
            [&] {
                civet::bootstrap_metric_ci(baseline, civet::Metric::share, top, b, 0.05, seed,
                                           Exec::parallel);
            },
            reps);
        report_line("bootstrap 1 domain", ts, tp,
                    one_s.lower == one_p.lower && one_s.upper == one_p.upper);
    }

    // full frequently-cited set from one replicate stream
    auto all_s = civet::bootstrap_all_domains(baseline, civet::Metric::share, fc.domains, b, 0.05,
                                              seed, Exec::serial);
    auto all_p = civet::bootstrap_all_domains(baseline, civet::Metric::share, fc.domains, b, 0.05,
                                              seed, Exec::parallel);
    {
        bool same = true;
        for (const auto& [domain, ci] : all_s) {
            same = same && ci.lower == all_p.at(domain).lower && ci.upper == all_p.at(domain).upper;
        }
        double ts = time_ms(
            [&] {
                civet::bootstrap_all_domains(baseline, civet::Metric::share, fc.domains, b, 0.05,
                                             seed, Exec::serial);
            },
            reps);
        double tp = time_ms(
            [&] {
                civet::bootstrap_all_domains(baseline, civet::Metric::share, fc.domains, b, 0.05,
                                             seed, Exec::parallel);
            },
            reps);
        report_line("bootstrap all domains", ts, tp, same);
    }

    // convergence grid
    {
        auto grid = civet::default_grid(baseline.n_responses(), 20);
        auto curve_s = civet::convergence_curve(baseline, civet::Metric::share, fc.domains, grid,
                                                b, 0.05, seed, civet::SubsampleOrder::prefix,
                                                std::nullopt, std::nullopt, 1, Exec::serial);
        auto curve_p = civet::convergence_curve(baseline, civet::Metric::share, fc.domains, grid,
                                                b, 0.05, seed, civet::SubsampleOrder::prefix,
                                                std::nullopt, std::nullopt, 1, Exec::parallel);
        bool same = true;
        for (size_t i = 0; i < curve_s.points.size(); ++i) {
            same = same && curve_s.points[i].max_ci_width == curve_p.points[i].max_ci_width;
        }
        double ts = time_ms(
            [&] {
                civet::convergence_curve(baseline, civet::Metric::share, fc.domains, grid, b,
                                         0.05, seed, civet::SubsampleOrder::prefix, std::nullopt,
                                         std::nullopt, 1, Exec::serial);
            },
            reps);
        double tp = time_ms(
            [&] {
                civet::convergence_curve(baseline, civet::Metric::share, fc.domains, grid, b,
                                         0.05, seed, civet::SubsampleOrder::prefix, std::nullopt,
                                         std::nullopt, 1, Exec::parallel);
            },
            reps);
        report_line("convergence grid", ts, tp, same);
    }

    // rank-stability series (domain bootstrap per pair)
    {
        std::vector<civet::SampleMetrics> metrics;
        for (const civet::Sample* s : samples) metrics.push_back(civet::compute_sample_metrics(*s));
        auto series_s = civet::rank_stability_series(metrics, fc.domains, b, 0.05, seed, {},
                                                     Exec::serial);
        auto series_p = civet::rank_stability_series(metrics, fc.domains, b, 0.05, seed, {},
                                                     Exec::parallel);
        bool same = true;
        for (size_t i = 0; i < series_s.consecutive.size(); ++i) {
            same = same && series_s.consecutive[i].ci_lower == series_p.consecutive[i].ci_lower &&
                   series_s.consecutive[i].ci_upper == series_p.consecutive[i].ci_upper;
        }
        double ts = time_ms(
            [&] { civet::rank_stability_series(metrics, fc.domains, b, 0.05, seed, {}, Exec::serial); },
            reps);
        double tp = time_ms(
            [&] {
                civet::rank_stability_series(metrics, fc.domains, b, 0.05, seed, {},
                                             Exec::parallel);
            },
            reps);
        report_line("rank stability series", ts, tp, same);
    }

    return 0;
}
