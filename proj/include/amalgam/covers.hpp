#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "amalgam/core.hpp"

namespace amalgam {

struct Letter {
  std::string gen;
  int exp = 1;

  bool operator==(const Letter &) const = default;
};

using Word = std::vector<Letter>;

// Finite cover of a wedge of circles: one permutation (image list) per generator.
struct GraphCover {
  int degree = 1;
  std::vector<std::string> generators;
  std::map<std::string, std::vector<int>> action;
};

struct CoverReport {
  bool valid = true;
  int degree = 0;
  bool transitive = false;
  int base_chi = 0;
  int chi = 0;
  std::vector<std::string> errors;
};

std::vector<std::string> surface_generators(int g);

Word boundary_word(int g);
Word power(const Word &w, int k);
std::string to_string(const Word &w);

GraphCover build_odd_cover(int g, int n);
CoverReport verify_cover(const GraphCover &c);

int word_action(const GraphCover &c, const Word &w, int start);
std::vector<int> boundary_components(const GraphCover &c, const Word &w);

// Smallest k >= 1 with start * w^k == start.
int first_return(const GraphCover &c, const Word &w, int start);

// Vertex reached by [a1,b1]^k from 0 for k = 0..n, and the closed form it is
// compared against.
std::vector<int> simulated_labels(const GraphCover &c, int n);
std::vector<int> formula_labels(int n);

struct PieceBoundary {
  std::string color;
  std::int64_t degree = 0;
};

struct PieceCover {
  std::string side;
  std::int64_t base_chi = 0;
  std::int64_t chi = 0;
  std::vector<PieceBoundary> boundaries;
};

struct ExistCovers {
  std::vector<PieceCover> y1;
  std::vector<PieceCover> y2;
  std::int64_t d1 = 0;
  std::int64_t d2 = 0;
  std::int64_t L = 0;
};

ExistCovers existcovers(const Amalgam &x1, const Amalgam &x2);

// Itemized violations of the piece-cover invariants for one Y_i of degree d.
std::vector<std::string> check_piece_covers(const std::vector<PieceCover> &y,
                                            std::int64_t degree,
                                            std::int64_t total_chi);

struct CommonCover {
  std::vector<std::int64_t> chis;
  std::int64_t d1 = 0;
  std::int64_t d2 = 0;
  std::int64_t L = 0;
};

std::optional<CommonCover> common_cover(const Amalgam &a1, const Amalgam &a2);

} // namespace amalgam
