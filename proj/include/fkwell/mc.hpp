#pragma once

#include <cstdint>
#include <thread>
#include <vector>

#include "fkwell/rng.hpp"
#include "fkwell/sampler.hpp"

namespace fkwell {

struct PathResult {
    double weight = 0.0;
    bool truncated = false;
};

struct Accumulator {
    double sum = 0.0;
    double sum_sq = 0.0;
    double max_weight = 0.0;
    long n = 0;
    long truncated = 0;

    void add(const PathResult& r) {
        sum += r.weight;
        sum_sq += r.weight * r.weight;
        if (r.weight > max_weight) max_weight = r.weight;
        ++n;
        if (r.truncated) ++truncated;
    }
    void merge(const Accumulator& o) {
        sum += o.sum;
        sum_sq += o.sum_sq;
        if (o.max_weight > max_weight) max_weight = o.max_weight;
        n += o.n;
        truncated += o.truncated;
    }
};

/// Runs `n` paths split round-robin over `streams` substreams; path i of
/// stream s draws from Rng(seed, s, i), so the sample is a pure function of
/// (seed, streams, n). Per-stream partials are merged in stream order, which
/// makes the pooled result bit-identical for any worker count.
template <class Fn>
Accumulator run_paths(long n, int streams, const SeedSpec& seed, int workers,
                      Fn&& fn) {
    if (streams < 1) streams = 1;
    std::vector<Accumulator> partial(streams);
    auto do_stream = [&](int s) {
        Accumulator acc;
        for (long i = s; i < n; i += streams)
            acc.add(fn(Rng(seed.seed, seed.stream + s,
                           static_cast<std::uint64_t>(i / streams))));
        partial[s] = acc;
    };
    if (workers <= 1 || streams == 1) {
        for (int s = 0; s < streams; ++s) do_stream(s);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (int s = w; s < streams; s += workers) do_stream(s);
            });
        for (auto& t : pool) t.join();
    }
    Accumulator total;
    for (const auto& acc : partial) total.merge(acc);
    return total;
}

/// Generalization of run_paths for estimators needing richer statistics:
/// `fn(rng, acc)` folds one path into a per-stream accumulator Acc (default
/// constructed), and the per-stream results are merged in stream order via
/// Acc::merge. Same determinism contract as run_paths.
template <class Acc, class Fn>
Acc run_reduce(long n, int streams, const SeedSpec& seed, int workers,
               Fn&& fn) {
    if (streams < 1) streams = 1;
    std::vector<Acc> partial(streams);
    auto do_stream = [&](int s) {
        Acc acc;
        for (long i = s; i < n; i += streams) {
            Rng rng(seed.seed, seed.stream + s,
                    static_cast<std::uint64_t>(i / streams));
            fn(rng, acc);
        }
        partial[s] = acc;
    };
    if (workers <= 1 || streams == 1) {
        for (int s = 0; s < streams; ++s) do_stream(s);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (int s = w; s < streams; s += workers) do_stream(s);
            });
        for (auto& t : pool) t.join();
    }
    Acc total;
    for (const auto& acc : partial) total.merge(acc);
    return total;
}

}  // namespace fkwell
