#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ddstream {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// One directed stream edge e(tail, head). The head's sketch row is the one
/// updated; the tail enters the head's sampled neighbor slots.
struct EdgeEvent {
    NodeId tail = kNoNode;
    NodeId head = kNoNode;
    std::uint64_t seq = 0;
    std::optional<double> weight;

    friend bool operator==(const EdgeEvent&, const EdgeEvent&) = default;
};

/// Maps external labels to dense ids in first-appearance order.
class NodeInterner {
public:
    NodeId intern(std::string_view label);
    [[nodiscard]] std::optional<NodeId> find(std::string_view label) const;
    /// Throws std::out_of_range for ids never handed out.
    [[nodiscard]] const std::string& resolve(NodeId id) const;
    [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }

private:
    std::unordered_map<std::string, NodeId> ids_;
    std::vector<std::string> labels_;
};

enum class Delimiter { kAuto, kWhitespace, kComma };

struct StreamOptions {
    Delimiter delimiter = Delimiter::kAuto;
    bool directed = true;
    bool weighted = false;
};

/// Malformed edge-list input. line() is the 1-based physical line number.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message);
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Splits one edge-list line into fields.
///  kAuto:       separators are runs of whitespace or a single comma
///               (whitespace around the comma is absorbed).
///  kWhitespace: runs of whitespace.
///  kComma:      single commas; fields are trimmed.
std::vector<std::string_view> split_fields(std::string_view line, Delimiter delimiter);

/// Pull-style reader over an edge-list text source.
///
/// Field 1 is the tail, field 2 the head, field 3 the weight when weighted.
/// Further columns (timestamps) are ignored; file order defines seq. Lines
/// starting with '#' or '%' and blank lines are skipped. In undirected mode
/// every line yields (v,u) then (u,v) with consecutive seq values.
class EdgeStreamReader {
public:
    EdgeStreamReader(std::istream& in, NodeInterner& interner, StreamOptions options = {});
    EdgeStreamReader(const std::filesystem::path& path, NodeInterner& interner,
                     StreamOptions options = {});

    std::optional<EdgeEvent> next();

    [[nodiscard]] std::size_t lines_read() const noexcept { return line_; }

private:
    std::unique_ptr<std::istream> owned_;
    std::istream* in_;
    NodeInterner* interner_;
    StreamOptions options_;
    std::size_t line_ = 0;
    std::uint64_t seq_ = 0;
    std::optional<EdgeEvent> pending_;
    std::string buffer_;
};

struct EdgeList {
    std::vector<EdgeEvent> events;
    NodeInterner interner;
};

EdgeList read_edge_list(const std::filesystem::path& path, StreamOptions options = {});
EdgeList read_edge_list(std::istream& in, StreamOptions options = {});

/// Node and event counts from a pass over the file (nothing retained).
struct StreamCounts {
    std::size_t node_count = 0;
    std::uint64_t event_count = 0;
};

StreamCounts count_stream(const std::filesystem::path& path, StreamOptions options = {});

/// Number of dense ids referenced by the events (max id + 1).
std::size_t node_count(std::span<const EdgeEvent> events);

/// Writes events as "tail head [weight]" lines. Without an interner the
/// decimal ids are used as labels.
void write_edge_list(std::ostream& out, std::span<const EdgeEvent> events,
                     const NodeInterner* labels = nullptr);

}  // namespace ddstream
