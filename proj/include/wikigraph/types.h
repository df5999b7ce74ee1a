// Copyright 2026 The Wikigraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wikigraph {

/// Page identifier as it appears in the dumps. Never re-assigned.
using PageId = std::uint64_t;

/// Hour-aligned UTC timestamps and UTC calendar days.
using Timestamp = std::chrono::sys_seconds;
using Day = std::chrono::sys_days;

inline constexpr std::int32_t kArticleNamespace = 0;
inline constexpr std::int32_t kCategoryNamespace = 14;

enum class NodeKind : std::uint8_t { kArticle = 0, kCategory = 1 };

enum class EdgeKind : std::uint8_t { kLinksTo = 0, kBelongsTo = 1 };

enum class Direction : std::uint8_t { kOut = 0, kIn = 1 };

std::string_view to_string(NodeKind kind);
std::string_view to_string(EdgeKind kind);
std::optional<NodeKind> parse_node_kind(std::string_view text);
std::optional<EdgeKind> parse_edge_kind(std::string_view text);

/// Namespace 14 maps to a category node, namespace 0 to an article.
std::optional<NodeKind> kind_from_namespace(std::int32_t ns);
std::int32_t namespace_of(NodeKind kind);

struct Node {
  PageId id = 0;
  std::string title;
  NodeKind kind = NodeKind::kArticle;

  friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
  PageId source = 0;
  PageId target = 0;
  EdgeKind kind = EdgeKind::kLinksTo;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Raised when a caller breaks an operation's precondition
/// (misaligned hour, inverted range, malformed label, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wikigraph
