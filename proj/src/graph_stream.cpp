#include "ddstream/graph_stream.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "ddstream/format.hpp"

namespace ddstream {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

bool is_skippable(std::string_view line) {
    auto t = trim(line);
    return t.empty() || t.front() == '#' || t.front() == '%';
}

}  // namespace

NodeId NodeInterner::intern(std::string_view label) {
    std::string key(label);
    if (auto it = ids_.find(key); it != ids_.end()) return it->second;
    if (labels_.size() >= kNoNode) throw std::length_error("node id space exhausted");
    auto id = static_cast<NodeId>(labels_.size());
    labels_.push_back(key);
    ids_.emplace(std::move(key), id);
    return id;
}

std::optional<NodeId> NodeInterner::find(std::string_view label) const {
    if (auto it = ids_.find(std::string(label)); it != ids_.end()) return it->second;
    return std::nullopt;
}

const std::string& NodeInterner::resolve(NodeId id) const {
    if (id >= labels_.size()) throw std::out_of_range("unknown node id " + std::to_string(id));
    return labels_[id];
}

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

std::vector<std::string_view> split_fields(std::string_view line, Delimiter delimiter) {
    std::vector<std::string_view> fields;
    switch (delimiter) {
        case Delimiter::kComma: {
            std::size_t start = 0;
            while (true) {
                auto pos = line.find(',', start);
                fields.push_back(trim(line.substr(start, pos - start)));
                if (pos == std::string_view::npos) break;
                start = pos + 1;
            }
            break;
        }
        case Delimiter::kWhitespace: {
            std::size_t i = 0;
            while (i < line.size()) {
                while (i < line.size() && is_space(line[i])) ++i;
                std::size_t j = i;
                while (j < line.size() && !is_space(line[j])) ++j;
                if (j > i) fields.push_back(line.substr(i, j - i));
                i = j;
            }
            break;
        }
        case Delimiter::kAuto: {
            auto t = trim(line);
            std::size_t i = 0;
            while (i <= t.size()) {
                std::size_t j = i;
                while (j < t.size() && t[j] != ',' && !is_space(t[j])) ++j;
                fields.push_back(t.substr(i, j - i));
                if (j >= t.size()) break;
                // One separator: whitespace run, optionally containing one comma.
                bool seen_comma = false;
                while (j < t.size()) {
                    if (is_space(t[j])) {
                        ++j;
                    } else if (t[j] == ',' && !seen_comma) {
                        seen_comma = true;
                        ++j;
                    } else {
                        break;
                    }
                }
                i = j;
            }
            break;
        }
    }
    return fields;
}

EdgeStreamReader::EdgeStreamReader(std::istream& in, NodeInterner& interner, StreamOptions options)
    : in_(&in), interner_(&interner), options_(options) {}

EdgeStreamReader::EdgeStreamReader(const std::filesystem::path& path, NodeInterner& interner,
                                   StreamOptions options)
    : owned_(std::make_unique<std::ifstream>(path)),
      in_(owned_.get()),
      interner_(&interner),
      options_(options) {
    if (!*owned_) throw std::runtime_error("cannot open " + path.string());
}

std::optional<EdgeEvent> EdgeStreamReader::next() {
    if (pending_) {
        auto e = *pending_;
        pending_.reset();
        return e;
    }
    while (std::getline(*in_, buffer_)) {
        ++line_;
        if (!buffer_.empty() && buffer_.back() == '\r') buffer_.pop_back();
        if (is_skippable(buffer_)) continue;

        auto fields = split_fields(buffer_, options_.delimiter);
        std::size_t required = options_.weighted ? 3 : 2;
        if (fields.size() < required) {
            throw ParseError(line_, "expected at least " + std::to_string(required) +
                                        " fields, found " + std::to_string(fields.size()));
        }
        if (fields[0].empty() || fields[1].empty()) throw ParseError(line_, "empty node label");

        std::optional<double> weight;
        if (options_.weighted) {
            double w = 0.0;
            auto f = fields[2];
            auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), w);
            if (ec != std::errc{} || ptr != f.data() + f.size()) {
                throw ParseError(line_, "unparseable weight '" + std::string(f) + "'");
            }
            if (!(w >= 0.0 && w <= 1.0)) {
                throw ParseError(line_, "weight " + std::string(f) + " outside [0, 1]");
            }
            weight = w;
        }

        NodeId tail = interner_->intern(fields[0]);
        NodeId head = interner_->intern(fields[1]);
        EdgeEvent e{tail, head, seq_++, weight};
        if (!options_.directed) pending_ = EdgeEvent{head, tail, seq_++, weight};
        return e;
    }
    if (in_->bad()) throw std::runtime_error("read error after line " + std::to_string(line_));
    return std::nullopt;
}

EdgeList read_edge_list(std::istream& in, StreamOptions options) {
    EdgeList out;
    EdgeStreamReader reader(in, out.interner, options);
    while (auto e = reader.next()) out.events.push_back(*e);
    return out;
}

EdgeList read_edge_list(const std::filesystem::path& path, StreamOptions options) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_edge_list(in, options);
}

StreamCounts count_stream(const std::filesystem::path& path, StreamOptions options) {
    NodeInterner interner;
    EdgeStreamReader reader(path, interner, options);
    StreamCounts counts;
    while (reader.next()) ++counts.event_count;
    counts.node_count = interner.size();
    return counts;
}

std::size_t node_count(std::span<const EdgeEvent> events) {
    std::size_t n = 0;
    for (const auto& e : events) n = std::max<std::size_t>({n, e.tail + 1ULL, e.head + 1ULL});
    return n;
}

void write_edge_list(std::ostream& out, std::span<const EdgeEvent> events,
                     const NodeInterner* labels) {
    auto label = [&](NodeId id) {
        return labels != nullptr ? labels->resolve(id) : std::to_string(id);
    };
    for (const auto& e : events) {
        out << label(e.tail) << ' ' << label(e.head);
        if (e.weight) out << ' ' << format_double(*e.weight);
        out << '\n';
    }
}

}  // namespace ddstream
