#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chiral/iso_maps.hpp"

namespace chiral {

inline constexpr std::uint64_t kDefaultSeed = 20160629;

struct SuiteOptions {
  std::string suite;
  std::uint32_t n = 3;
  std::uint64_t seed = kDefaultSeed;
  std::optional<int> degree_r;  // roundtrip and n2-closed-form only
};

struct SuiteReport {
  std::string suite;
  std::uint32_t n = 0;
  std::optional<int> degree_r;
  std::size_t cases_total = 0;
  std::size_t cases_failed = 0;
  std::optional<CheckFailure> first_counterexample;
  double elapsed_ms = 0;
  std::vector<std::size_t> dims;   // lie-dim only
  std::vector<SuiteReport> parts;  // all only
};

const std::vector<std::string>& suite_names();
/// Throws DomainError for an unknown suite.
SuiteReport run_suite(const SuiteOptions& options);

std::string to_json(const SuiteReport& report);
std::string to_text(const SuiteReport& report);

/// Worker count from CHIRAL_THREADS, else the hardware concurrency.
std::size_t thread_count();
/// Runs body(0..count-1) on thread_count() workers. The exception of the
/// lowest failing index, if any, is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace chiral
