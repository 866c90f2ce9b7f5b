#pragma once
// Corpora shared across test files, rendered once per process.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "chartparser/synthgen.hpp"

inline const std::vector<chartparser::synth::CorpusEntry>& cached_corpus(int count, std::uint64_t seed) {
    static std::map<std::pair<int, std::uint64_t>, std::vector<chartparser::synth::CorpusEntry>> cache;
    auto it = cache.find({count, seed});
    if (it == cache.end()) it = cache.emplace(std::pair(count, seed), chartparser::synth::corpus(count, seed)).first;
    return it->second;
}
