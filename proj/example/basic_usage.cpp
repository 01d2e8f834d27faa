// Loads a critical set, checks it, and prints its unique completion.

#include <iostream>

#include "critset/critset.hpp"

int main(int argc, char** argv) {
  const std::string name = argc > 1 ? argv[1] : "cs5-11";
  const auto corpus = critset::Corpus::load_default();
  const auto& entry = corpus.get(name);
  const auto& c = entry.data.front();

  const auto report = critset::analyze(c);
  std::cout << name << ": size " << c.size() << ", uniquely completable "
            << (report.is_uc ? "yes" : "no") << ", critical " << (report.is_critical ? "yes" : "no")
            << '\n';
  if (report.completion) std::cout << critset::serialize(*report.completion);

  const auto stats = critset::union_stats(c);
  std::cout << "sum |R_i u C_j| = " << stats.lhs_sum << ", n^3 - sum (n-|E_k|)^2 = " << stats.rhs_sum
            << '\n';
  return report.is_critical ? 0 : 1;
}
