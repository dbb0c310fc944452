#include "civet/metrics.hpp"

#include "civet/error.hpp"
#include "civet/stability.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace civet;
using test::make_sample;

TEST_CASE("counts, shares and prevalence from a hand-worked sample") {
    // r1 cites {A, A, B}, r2 cites {A}
    Sample s = make_sample("job01", {{"a.com", "a.com", "b.com"}, {"a.com"}});
    SampleMetrics m = compute_sample_metrics(s);

    CHECK(m.n_responses == 2);
    CHECK(m.total_citations == 4);
    CHECK(m.per_domain.at("a.com").count == 3);
    CHECK(m.per_domain.at("a.com").share == doctest::Approx(0.75));
    CHECK(m.per_domain.at("a.com").prevalence == doctest::Approx(1.0));
    CHECK(m.per_domain.at("a.com").responses_citing == 2);
    CHECK(m.per_domain.at("b.com").count == 1);
    CHECK(m.per_domain.at("b.com").share == doctest::Approx(0.25));
    CHECK(m.per_domain.at("b.com").prevalence == doctest::Approx(0.5));
}

TEST_CASE("single-domain sample and empty-sample error") {
    Sample s = make_sample("job01", {{"a.com"}});
    SampleMetrics m = compute_sample_metrics(s);
    CHECK(m.per_domain.at("a.com").share == 1.0);
    CHECK(m.per_domain.at("a.com").prevalence == 1.0);

    Sample empty;
    empty.key = {"p", "t", "j"};
    CHECK_THROWS_AS(compute_sample_metrics(empty), Error);
}

TEST_CASE("zero-citation responses count toward N but not C") {
    Sample s = make_sample("job01", {{"a.com"}, {}});
    SampleMetrics m = compute_sample_metrics(s);
    CHECK(m.n_responses == 2);
    CHECK(m.total_citations == 1);
    CHECK(m.per_domain.at("a.com").prevalence == doctest::Approx(0.5));
    CHECK(m.per_domain.at("a.com").share == 1.0);
}

TEST_CASE("share sums to one and prevalence times N is integral") {
    std::mt19937 gen(11);
    for (int trial = 0; trial < 20; ++trial) {
        Sample s;
        s.key = {"p", "t", "j"};
        const char* domains[] = {"a.com", "b.com", "c.com", "d.com", "e.com"};
        size_t n = 2 + gen() % 20;
        for (size_t i = 0; i < n; ++i) {
            ResponseRecord r = test::make_response("p", "t", "j", "q" + std::to_string(i),
                                                   "r" + std::to_string(i), {});
            size_t k = gen() % 6;
            for (size_t c = 0; c < k; ++c) {
                const char* d = domains[gen() % 5];
                r.citations.push_back({"https://" + std::string(d) + "/p1", d});
            }
            s.responses.push_back(std::move(r));
        }
        SampleMetrics m = compute_sample_metrics(s);
        if (m.total_citations == 0) {
            CHECK(m.per_domain.empty());
            continue;
        }
        double share_sum = 0;
        for (const auto& [domain, d] : m.per_domain) {
            share_sum += d.share;
            CHECK(d.prevalence >= 0);
            CHECK(d.prevalence <= 1);
            CHECK(d.responses_citing <= d.count);
            double scaled = d.prevalence * static_cast<double>(m.n_responses);
            CHECK(scaled == doctest::Approx(std::round(scaled)).epsilon(1e-9));
        }
        CHECK(share_sum == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("ranking by count and by share is the same ordering") {
    std::mt19937 gen(23);
    for (int trial = 0; trial < 10; ++trial) {
        Sample s;
        s.key = {"p", "t", "j"};
        for (size_t i = 0; i < 30; ++i) {
            ResponseRecord r = test::make_response("p", "t", "j", "q" + std::to_string(i),
                                                   "r" + std::to_string(i), {});
            size_t k = 1 + gen() % 8;
            for (size_t c = 0; c < k; ++c) {
                std::string d = "d" + std::to_string(gen() % 12) + ".com";
                r.citations.push_back({"https://" + d + "/p1", d});
            }
            s.responses.push_back(std::move(r));
        }
        SampleMetrics m = compute_sample_metrics(s);
        if (m.per_domain.size() < 3) continue;

        std::map<std::string, double> counts, shares, weights;
        std::vector<std::string> domains;
        for (const auto& [domain, d] : m.per_domain) {
            domains.push_back(domain);
            counts[domain] = static_cast<double>(d.count);
            shares[domain] = d.share;
            weights[domain] = 1.0;
        }
        // share = count / constant, so the rank correlation is exactly 1
        CHECK(weighted_spearman(counts, shares, domains, weights) == doctest::Approx(1.0));
    }
}

TEST_CASE("citation summary on tiny fixtures") {
    Sample flat = make_sample("job01", {{"a.com", "a.com", "a.com", "a.com", "a.com"},
                                        {"a.com", "a.com", "a.com", "a.com", "a.com"},
                                        {"a.com", "a.com", "a.com", "a.com", "a.com"}});
    CitationSummary s = citation_summary(flat);
    CHECK(s.mean == 5);
    CHECK(s.std == 0);
    CHECK(s.min == 5);
    CHECK(s.p25 == 5);
    CHECK(s.median == 5);
    CHECK(s.p75 == 5);
    CHECK(s.p95 == 5);
    CHECK(s.max == 5);

    Sample steps;
    steps.key = {"p", "t", "j"};
    for (size_t k = 1; k <= 4; ++k) {
        ResponseRecord r = test::make_response("p", "t", "j", "q" + std::to_string(k),
                                               "r" + std::to_string(k), {});
        for (size_t c = 0; c < k; ++c) r.citations.push_back({"https://a.com/p1", "a.com"});
        steps.responses.push_back(std::move(r));
    }
    CitationSummary t = citation_summary(steps);
    CHECK(t.median == doctest::Approx(2.5));
    CHECK(t.p25 == doctest::Approx(1.75));
    CHECK(t.p75 == doctest::Approx(3.25));
    CHECK(t.mean == doctest::Approx(2.5));
    CHECK(t.std == doctest::Approx(std::sqrt(5.0 / 3.0)));
    CHECK(t.min <= t.p25);
    CHECK(t.p25 <= t.median);
    CHECK(t.median <= t.p75);
    CHECK(t.p75 <= t.p95);
    CHECK(t.p95 <= t.max);
}

TEST_CASE("frequently cited classification and histogram") {
    Sample s1 = make_sample("job01", {{"a.com", "b.com", "c.com"}});
    Sample s2 = make_sample("job02", {{"a.com", "b.com"}});
    Sample s3 = make_sample("job03", {{"a.com", "c.com"}});

    FrequentlyCitedSet fc = classify_frequently_cited({&s1, &s2, &s3});
    CHECK(fc.n_samples == 3);
    CHECK(fc.domains == std::set<std::string>{"a.com"});
    CHECK(fc.appearance_histogram.at(1) == 0);
    CHECK(fc.appearance_histogram.at(2) == 2); // b.com in s1+s2, c.com in s1+s3
    CHECK(fc.appearance_histogram.at(3) == 1);

    // 8-of-9 stays out of the set
    std::vector<Sample> nine;
    for (int j = 1; j <= 9; ++j) {
        nine.push_back(make_sample("job0" + std::to_string(j),
                                   {{j < 9 ? "always.com" : "other.com", "every.com"}}));
    }
    std::vector<const Sample*> ptrs;
    for (const Sample& s : nine) ptrs.push_back(&s);
    FrequentlyCitedSet fc9 = classify_frequently_cited(ptrs);
    CHECK(fc9.domains.contains("every.com"));
    CHECK(!fc9.domains.contains("always.com"));
    CHECK(fc9.appearance_histogram.at(8) == 1);
    CHECK(fc9.appearance_histogram.at(9) == 1);

    // the threshold is exposed as a fraction
    FrequentlyCitedSet relaxed = classify_frequently_cited(ptrs, 8.0 / 9.0);
    CHECK(relaxed.domains.contains("always.com"));
}

TEST_CASE("classification rejects mixed groups") {
    Sample s1 = make_sample("job01", {{"a.com"}});
    Sample other = make_sample("job02", {{"a.com"}}, "otherengine");
    try {
        classify_frequently_cited({&s1, &other});
        FAIL("expected MixedKeys");
    } catch (const Error& e) {
        CHECK(e.code() == errc::mixed_keys);
    }
}

TEST_CASE("adding a sample never grows the frequently cited set") {
    std::mt19937 gen(31);
    std::vector<Sample> samples;
    for (int j = 0; j < 6; ++j) {
        Sample s;
        s.key = {"p", "t", "job" + std::to_string(j)};
        for (int q = 0; q < 10; ++q) {
            ResponseRecord r = test::make_response("p", "t", s.key.job_id, "q" + std::to_string(q),
                                                   "r" + std::to_string(q), {});
            size_t k = 1 + gen() % 4;
            for (size_t c = 0; c < k; ++c) {
                std::string d = "d" + std::to_string(gen() % 8) + ".com";
                r.citations.push_back({"https://" + d + "/p1", d});
            }
            s.responses.push_back(std::move(r));
        }
        samples.push_back(std::move(s));
    }
    std::vector<const Sample*> ptrs = {&samples[0], &samples[1]};
    std::set<std::string> previous = classify_frequently_cited(ptrs).domains;
    for (size_t j = 2; j < samples.size(); ++j) {
        ptrs.push_back(&samples[j]);
        std::set<std::string> next = classify_frequently_cited(ptrs).domains;
        for (const std::string& d : next) CHECK(previous.contains(d));
        previous = std::move(next);
    }
}
