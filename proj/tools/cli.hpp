#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace lensclass::cli {

struct RunConfig {
  std::string command;
  std::int64_t r = 0;
  std::vector<std::int64_t> weights;
  std::vector<std::int64_t> weights2;
  int dim = 7;
  int ell = 0;
  std::int64_t K = 1;
  std::string method = "brute";
  std::int64_t budget = -1;  // -1: 4r
  std::int64_t max_r = 0;
  std::string format;
  std::uint64_t seed = 0;
};

enum Exit : int { Ok = 0, No = 1, Invalid = 2, Inconclusive = 3 };

int cmd_adjacency(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_isomorphic(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_classes(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// args excludes the program name
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// LENSCLASS_THREADS, else hardware concurrency; at least 1
unsigned worker_count();

}  // namespace lensclass::cli
