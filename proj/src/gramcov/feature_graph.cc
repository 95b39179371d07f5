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

#include "gramcov/feature_graph.h"

#include <algorithm>
#include <deque>
#include <utility>

namespace gramcov {

int SymbolTable::intern(std::string_view name) {
  auto it = ids_.find(std::string(name));
  if (it != ids_.end()) return it->second;
  int id = static_cast<int>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

int SymbolTable::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  return it == ids_.end() ? -1 : it->second;
}

int FeatureGraph::new_node() {
  nodes_.push_back({Kind::kUnbound, -1, -1});
  return static_cast<int>(nodes_.size()) - 1;
}

int FeatureGraph::new_atom(int symbol) {
  nodes_.push_back({Kind::kAtom, -1, symbol});
  return static_cast<int>(nodes_.size()) - 1;
}

int FeatureGraph::find(int node) const {
  while (nodes_[node].forward >= 0) node = nodes_[node].forward;
  return node;
}

void FeatureGraph::push_link(int node, int key, int target) {
  links_.push_back({key, target, nodes_[node].value});
  nodes_[node].value = static_cast<int>(links_.size()) - 1;
}

int FeatureGraph::attribute(int node, int symbol, bool create) {
  node = find(node);
  switch (nodes_[node].kind) {
    case Kind::kAtom:
    case Kind::kSet:
      return -1;
    case Kind::kUnbound:
      if (!create) return -1;
      nodes_[node].kind = Kind::kComplex;
      nodes_[node].value = -1;
      break;
    case Kind::kComplex:
      for (int l = nodes_[node].value; l >= 0; l = links_[l].next) {
        if (links_[l].key == symbol) return links_[l].target;
      }
      if (!create) return -1;
      break;
  }
  int target = new_node();
  push_link(node, symbol, target);
  return target;
}

int FeatureGraph::follow(int node, const std::vector<int>& path, bool create) {
  for (int symbol : path) {
    node = attribute(node, symbol, create);
    if (node < 0) return -1;
  }
  return node;
}

bool FeatureGraph::unify(int a, int b) {
  std::vector<std::pair<int, int>> stack = {{a, b}};
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    x = find(x);
    y = find(y);
    if (x == y) continue;
    Kind kx = nodes_[x].kind;
    Kind ky = nodes_[y].kind;
    if (kx == Kind::kUnbound) {
      nodes_[x].forward = y;
      continue;
    }
    if (ky == Kind::kUnbound) {
      nodes_[y].forward = x;
      continue;
    }
    if (kx != ky) return false;
    switch (kx) {
      case Kind::kAtom:
        if (nodes_[x].value != nodes_[y].value) return false;
        nodes_[y].forward = x;
        break;
      case Kind::kComplex:
        nodes_[y].forward = x;
        for (int l = nodes_[y].value; l >= 0; l = links_[l].next) {
          int key = links_[l].key;
          int target = links_[l].target;
          int existing = -1;
          for (int m = nodes_[x].value; m >= 0; m = links_[m].next) {
            if (links_[m].key == key) {
              existing = links_[m].target;
              break;
            }
          }
          if (existing >= 0) {
            stack.emplace_back(existing, target);
          } else {
            push_link(x, key, target);
          }
        }
        break;
      case Kind::kSet:
        nodes_[y].forward = x;
        for (int l = nodes_[y].value; l >= 0; l = links_[l].next) {
          push_link(x, -1, links_[l].target);
        }
        break;
      case Kind::kUnbound:
        break;
    }
  }
  return true;
}

bool FeatureGraph::add_member(int set, int element) {
  set = find(set);
  if (nodes_[set].kind == Kind::kUnbound) {
    nodes_[set].kind = Kind::kSet;
    nodes_[set].value = -1;
  } else if (nodes_[set].kind != Kind::kSet) {
    return false;
  }
  push_link(set, -1, element);
  return true;
}

bool FeatureGraph::path_exists(const Pending& pending) const {
  int node = pending.node;
  for (int i = 0; i < pending.path_size; ++i) {
    node = find(node);
    if (nodes_[node].kind != Kind::kComplex) return false;
    int symbol = pending_paths_[pending.path_begin + i];
    int next = -1;
    for (int l = nodes_[node].value; l >= 0; l = links_[l].next) {
      if (links_[l].key == symbol) {
        next = links_[l].target;
        break;
      }
    }
    if (next < 0) return false;
    node = next;
  }
  return true;
}

bool FeatureGraph::require_absent(int node, const std::vector<int>& path) {
  Pending pending{node, static_cast<int>(pending_paths_.size()), static_cast<int>(path.size())};
  pending_paths_.insert(pending_paths_.end(), path.begin(), path.end());
  pending_.push_back(pending);
  return !path_exists(pending);
}

bool FeatureGraph::check_pending() const {
  for (const Pending& pending : pending_) {
    if (path_exists(pending)) return false;
  }
  return true;
}

int FeatureGraph::import(const FeatureGraph& other) {
  const int node_offset = static_cast<int>(nodes_.size());
  const int link_offset = static_cast<int>(links_.size());
  const int path_offset = static_cast<int>(pending_paths_.size());
  nodes_.reserve(nodes_.size() + other.nodes_.size());
  links_.reserve(links_.size() + other.links_.size());
  for (Node node : other.nodes_) {
    if (node.forward >= 0) node.forward += node_offset;
    if ((node.kind == Kind::kComplex || node.kind == Kind::kSet) && node.value >= 0) {
      node.value += link_offset;
    }
    nodes_.push_back(node);
  }
  for (Link link : other.links_) {
    link.target += node_offset;
    if (link.next >= 0) link.next += link_offset;
    links_.push_back(link);
  }
  for (Pending pending : other.pending_) {
    pending.node += node_offset;
    pending.path_begin += path_offset;
    pending_.push_back(pending);
  }
  pending_paths_.insert(pending_paths_.end(), other.pending_paths_.begin(),
                        other.pending_paths_.end());
  return node_offset + kRoot;
}

bool FeatureGraph::compact() {
  if (!check_pending()) return false;
  std::vector<int> renumber(nodes_.size(), -1);
  std::vector<int> order;
  int root = find(kRoot);
  renumber[root] = 0;
  order.push_back(root);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Node& node = nodes_[order[i]];
    if (node.kind != Kind::kComplex && node.kind != Kind::kSet) continue;
    for (int l = node.value; l >= 0; l = links_[l].next) {
      int target = find(links_[l].target);
      if (renumber[target] < 0) {
        renumber[target] = static_cast<int>(order.size());
        order.push_back(target);
      }
    }
  }

  std::vector<Node> nodes;
  std::vector<Link> links;
  nodes.reserve(order.size());
  links.reserve(links_.size());
  for (int old : order) {
    Node node = nodes_[old];
    node.forward = -1;
    if (node.kind == Kind::kComplex || node.kind == Kind::kSet) {
      int head = -1;
      for (int l = nodes_[old].value; l >= 0; l = links_[l].next) {
        links.push_back({links_[l].key, renumber[find(links_[l].target)], head});
        head = static_cast<int>(links.size()) - 1;
      }
      node.value = head;
    }
    nodes.push_back(node);
  }

  std::vector<Pending> pending;
  std::vector<int> paths;
  for (const Pending& p : pending_) {
    int node = renumber[find(p.node)];
    if (node < 0) continue;
    pending.push_back({node, static_cast<int>(paths.size()), p.path_size});
    paths.insert(paths.end(), pending_paths_.begin() + p.path_begin,
                 pending_paths_.begin() + p.path_begin + p.path_size);
  }

  nodes_ = std::move(nodes);
  links_ = std::move(links);
  pending_ = std::move(pending);
  pending_paths_ = std::move(paths);
  return true;
}

std::string FeatureGraph::canonical(const SymbolTable& symbols) const {
  // Reference counts decide which nodes need a reentrancy tag.
  std::vector<int> references(nodes_.size(), 0);
  std::vector<int> stack = {find(kRoot)};
  references[stack.back()] = 1;
  while (!stack.empty()) {
    int n = stack.back();
    stack.pop_back();
    const Node& node = nodes_[n];
    if (node.kind != Kind::kComplex && node.kind != Kind::kSet) continue;
    for (int l = node.value; l >= 0; l = links_[l].next) {
      int target = find(links_[l].target);
      if (references[target]++ == 0) stack.push_back(target);
    }
  }

  // Tag-free rendering, used to order set elements.
  std::vector<int> path;
  auto plain = [&](auto& self, int n) -> std::string {
    n = find(n);
    if (std::find(path.begin(), path.end(), n) != path.end()) return "@";
    const Node& node = nodes_[n];
    switch (node.kind) {
      case Kind::kUnbound:
        return "_";
      case Kind::kAtom:
        return symbols.name(node.value);
      default:
        break;
    }
    path.push_back(n);
    std::vector<std::string> parts;
    for (int l = node.value; l >= 0; l = links_[l].next) {
      std::string value = self(self, links_[l].target);
      parts.push_back(node.kind == Kind::kComplex ? symbols.name(links_[l].key) + ":" + value
                                                  : std::move(value));
    }
    path.pop_back();
    std::sort(parts.begin(), parts.end());
    std::string out = node.kind == Kind::kComplex ? "[" : "{";
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) out += ",";
      out += parts[i];
    }
    out += node.kind == Kind::kComplex ? "]" : "}";
    return out;
  };

  std::vector<int> tags(nodes_.size(), 0);
  int next_tag = 0;
  std::string out;
  auto render = [&](auto& self, int n) -> void {
    n = find(n);
    if (references[n] > 1) {
      if (tags[n] != 0) {
        out += "#" + std::to_string(tags[n]);
        return;
      }
      tags[n] = ++next_tag;
      out += "#" + std::to_string(tags[n]) + "=";
    }
    const Node& node = nodes_[n];
    switch (node.kind) {
      case Kind::kUnbound:
        out += "_";
        return;
      case Kind::kAtom:
        out += symbols.name(node.value);
        return;
      default:
        break;
    }
    if (node.kind == Kind::kComplex) {
      std::vector<std::pair<const std::string*, int>> children;
      for (int l = node.value; l >= 0; l = links_[l].next) {
        children.emplace_back(&symbols.name(links_[l].key), links_[l].target);
      }
      std::sort(children.begin(), children.end(), [](const auto& a, const auto& b) {
        return *a.first != *b.first ? *a.first < *b.first : a.second < b.second;
      });
      out += "[";
      for (std::size_t i = 0; i < children.size(); ++i) {
        if (i) out += ",";
        out += *children[i].first;
        out += ":";
        self(self, children[i].second);
      }
      out += "]";
      return;
    }
    std::vector<std::pair<std::string, int>> children;
    for (int l = node.value; l >= 0; l = links_[l].next) {
      children.emplace_back(plain(plain, links_[l].target), links_[l].target);
    }
    std::sort(children.begin(), children.end());
    out += "{";
    for (std::size_t i = 0; i < children.size(); ++i) {
      if (i) out += ",";
      self(self, children[i].second);
    }
    out += "}";
  };
  render(render, kRoot);
  return out;
}

}  // namespace gramcov
