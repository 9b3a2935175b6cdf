#pragma once

#include <string>
#include <vector>

#include "hjtoric/resolution.hpp"

namespace hjtoric {

/// Resolved picture of a (p,q)-weighted blowup of a smooth point: the
/// exceptional class E~ (self-intersection -1) and the resolution chains of
/// the two orbifold points it passes through.
///
/// chain_p is p/(p-q) in expansion order and E~ meets its LAST class;
/// chain_q is the reversal of q/k (k = q - p mod q) and E~ meets its FIRST
/// class. Either way E~ touches the end that lets the whole configuration
/// blow down. fulton_p / fulton_q keep both raw expansions.
struct BlowupConfig {
  Integer p{1};
  Integer q{1};
  Rational size{1};
  std::string tag;
  std::string exceptional{"E~"};
  Chain chain_p;
  Chain chain_q;
  HJExpansion fulton_p;
  HJExpansion fulton_q;

  std::size_t class_count() const { return 1 + chain_p.size() + chain_q.size(); }

  /// Index in chain_p / chain_q of the class meeting E~.
  std::size_t contact_p() const { return chain_p.size() - 1; }
  std::size_t contact_q() const { return 0; }

  /// E~ first, then chain_p and chain_q in stored order: the contraction order.
  std::vector<std::string> labels() const {
    std::vector<std::string> out{exceptional};
    out.insert(out.end(), chain_p.labels.begin(), chain_p.labels.end());
    out.insert(out.end(), chain_q.labels.begin(), chain_q.labels.end());
    return out;
  }
};

}  // namespace hjtoric
