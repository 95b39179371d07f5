// Copyright 2026 The Gramcov Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Feature structures as a union-find graph stored in flat arrays, so that a
// chart edge can own a private copy at the cost of a few memcpy's.

#ifndef GRAMCOV_FEATURE_GRAPH_H_
#define GRAMCOV_FEATURE_GRAPH_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gramcov {

class SymbolTable {
 public:
  int intern(std::string_view name);
  // -1 when absent.
  int find(std::string_view name) const;
  const std::string& name(int id) const { return names_[id]; }
  int size() const { return static_cast<int>(names_.size()); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> ids_;
};

class FeatureGraph {
 public:
  enum class Kind : std::uint8_t { kUnbound, kAtom, kComplex, kSet };

  FeatureGraph() { new_node(); }

  // Node 0 is the root.
  static constexpr int kRoot = 0;

  int new_node();
  int new_atom(int symbol);
  int find(int node) const;

  // Attribute value of `node`, creating it when `create` is set. Returns -1 on
  // a type clash (atom or set) or, without `create`, when absent.
  int attribute(int node, int symbol, bool create);
  int follow(int node, const std::vector<int>& path, bool create);

  bool unify(int a, int b);
  // Makes `set` a set value (if unbound) and adds `element` to it.
  bool add_member(int set, int element);

  // Registers a nonexistence constraint on node+path. Returns false if the
  // path already exists. Attributes are never removed, so pending
  // constraints can be rechecked at any time.
  bool require_absent(int node, const std::vector<int>& path);
  bool check_pending() const;

  // Copies `other` into this graph; returns the index of its root.
  int import(const FeatureGraph& other);

  // Keeps the part reachable from the root. Pending constraints on
  // unreachable nodes are final and dropped after a check. Returns false if
  // some pending constraint is violated.
  bool compact();

  // Canonical text form with reentrancy tags and name-sorted attributes;
  // equal strings iff the rooted graphs are isomorphic (sets unordered).
  std::string canonical(const SymbolTable& symbols) const;

  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Node {
    Kind kind;
    int forward;  // -1 for a representative
    int value;    // atom symbol, or head of the link list
  };
  struct Link {
    int key;  // attribute symbol; -1 for set elements
    int target;
    int next;
  };
  struct Pending {
    int node;
    int path_begin;
    int path_size;
  };

  bool path_exists(const Pending& pending) const;
  void push_link(int node, int key, int target);

  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::vector<Pending> pending_;
  std::vector<int> pending_paths_;
};

}  // namespace gramcov

#endif  // GRAMCOV_FEATURE_GRAPH_H_
