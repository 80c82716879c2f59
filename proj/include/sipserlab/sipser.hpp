#pragma once

#include <cstdint>
#include <vector>

#include "sipserlab/boolfn.hpp"
#include "sipserlab/circuit.hpp"

namespace sipserlab {

// u: AND fan-in; w: OR fan-in above the bottom layer; w_b: bottom OR fan-in;
// d: number of AND layers. w_b is deliberately an independent parameter so
// small instances stay runnable; tying w_b to a fractional power of w
// recovers the asymptotic regime.
struct SipserParams {
  int u = 2;
  int w = 1;
  int w_b = 1;
  int d = 0;

  void validate() const;
};

// Variable addresses are tuples (b0, a1, b1, ..., a_d, b_d) with a_i in [u],
// b_0..b_{d-1} in [w], b_d in [w_b], flattened lexicographically. A block is
// the u*w_b addresses below one bottom-level AND gate; each block splits into
// u sections of w_b addresses, one per bottom OR gate.
class AddressSpace {
 public:
  explicit AddressSpace(SipserParams p);

  const SipserParams& params() const { return p_; }

  std::int64_t n() const { return n_; }
  std::int64_t num_blocks() const { return num_blocks_; }  // 1 when d == 0
  int block_size() const { return p_.u * p_.w_b; }
  int section_size() const { return p_.w_b; }

  // OR gates two levels up: each has w blocks as children (d >= 1).
  std::int64_t num_level2_or() const;
  std::int64_t level2_child_block(std::int64_t gate, int j) const { return gate * p_.w + j; }

  std::int64_t block_of(std::int64_t var) const { return var / block_size(); }
  int tau_of(std::int64_t var) const { return static_cast<int>(var % block_size()); }
  int section_of_tau(int tau) const { return tau / p_.w_b; }

  std::int64_t address_to_index(const std::vector<int>& tuple) const;
  std::vector<int> index_to_address(std::int64_t index) const;

 private:
  SipserParams p_;
  std::int64_t n_ = 0;
  std::int64_t num_blocks_ = 0;
  std::vector<int> dims_;  // mixed radix, most significant first
};

// Read-once monotone tree with gates And/Or and leaves carrying variable
// indices.
class Formula {
 public:
  enum class Op : unsigned char { Var, And, Or };

  struct Node {
    Op op = Op::Var;
    std::int64_t var = -1;
    std::vector<int> children;
  };

  std::vector<Node> nodes;
  int root = -1;
  std::int64_t num_vars = 0;

  int add_var(std::int64_t v);
  int add_gate(Op op, std::vector<int> children);

  bool eval_row(std::uint64_t row) const;  // num_vars <= 64
  bool eval(const std::vector<bool>& x) const;
  int depth() const;  // gate layers on the longest root-to-leaf path
  bool is_read_once() const;
};

TruthTable truth_table(const Formula& f);

// 2d+1 alternating layers, top and bottom OR; d layers of fan-in-u ANDs; OR
// fan-in w except w_b at the bottom; leaf i is variable i. d = 0 degenerates
// to the bare OR of w_b variables.
Formula build_skewed_sipser(const SipserParams& p);

// AND of u ORs of w_b fresh variables; the depth-2 block unit.
Formula build_cnf_sipser(int u, int w_b);

// Each leaf replaced by an AND of two fresh variables (2i, 2i+1); depth
// 2d+2 over 2n variables.
Formula build_dagger(const SipserParams& p);

// Distributes AND-of-OR into OR-of-AND at every other AND layer from the top
// and collapses adjacent same-type layers; output has depth d+1 and the same
// truth table. Unary gates are kept so the layer count is literal.
Circuit demorgan_convert(const Formula& f, const SipserParams& p);

// The d=1 formula written out as a width-u DNF: one term per (block, choice
// of one variable per section). Used to probe the width boundary of the
// switching lemma.
Dnf skewed_sipser_d1_dnf(const AddressSpace& space);

}  // namespace sipserlab
