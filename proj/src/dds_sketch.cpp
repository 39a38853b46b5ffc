#include "ddstream/dds_sketch.hpp"

#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ddstream/format.hpp"

namespace ddstream {

namespace {

constexpr const char* kSnapshotMagic = "ddstream-sketch";
constexpr int kSnapshotVersion = 1;

struct Fnv1a {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    void add(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    }
    void add(const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    }
};

void validate(const SketchConfig& c) {
    if (c.q < 1) throw std::invalid_argument("sketch: q must be >= 1");
    if (!(c.lambda >= 0.0 && c.lambda <= 1.0)) {
        throw std::invalid_argument("sketch: lambda must lie in [0, 1]");
    }
}

template <class T>
T expect_field(std::istream& in, const char* key) {
    std::string k;
    T value{};
    if (!(in >> k) || k != key || !(in >> value)) {
        throw std::runtime_error(std::string("sketch snapshot: expected '") + key + "'");
    }
    return value;
}

}  // namespace

AdjSketch::AdjSketch(SketchConfig config) : config_(config), rng_(config.seed) {
    validate(config_);
}

AdjSketch::Row& AdjSketch::row_for_update(NodeId u) {
    if (u == kNoNode) throw std::invalid_argument("sketch: invalid node id");
    if (u >= rows_.size()) {
        rows_.resize(std::size_t{u} + 1);
        if (config_.mode == SketchMode::kWeighted) weight_sums_.resize(rows_.size(), 0.0);
    }
    return rows_[u];
}

void AdjSketch::next(const EdgeEvent& event) {
    const bool weighted = config_.mode == SketchMode::kWeighted;
    if (weighted && !event.weight) {
        throw std::invalid_argument("sketch: weighted mode requires an edge weight");
    }
    Row& row = row_for_update(event.head);
    if (row.block == kNoBlock) {
        row.block = static_cast<std::uint32_t>(slot_pool_.size() / config_.q);
        slot_pool_.resize(slot_pool_.size() + config_.q, kNoNode);
        ++row_count_;
    }
    ++row.degree;
    std::span<NodeId> cells(slot_pool_.data() + std::size_t{row.block} * config_.q, config_.q);
    observe(cells, event.tail, row.degree, rng_);
    if (weighted) weight_sums_[event.head] += *event.weight;
    ++events_;
}

template <class T, class Value>
AdjSketch::ScanResult<T> AdjSketch::scan(NodeId u, Value neighbor_value,
                                         std::size_t* accesses) const {
    ScanResult<T> r;
    std::size_t touched = 1;  // u's degree cell
    for (NodeId s : slots(u)) {
        ++touched;
        if (s == kNoNode) continue;
        ++r.n_count;
        ++touched;
        r.sum += neighbor_value(s);
    }
    if (accesses != nullptr) *accesses = touched;
    return r;
}

double AdjSketch::query(NodeId u) const { return query(u, config_.lambda); }

double AdjSketch::query(NodeId u, double lambda) const {
    auto r = scan<std::uint64_t>(u, [this](NodeId s) { return degree(s); });
    if (r.n_count == 0) return 0.0;
    // d*sum is formed before dividing so that a row whose slots all hold the
    // same neighbor reproduces the exact integer sum.
    const auto d = static_cast<double>(degree(u));
    return lambda * (d * static_cast<double>(r.sum) / static_cast<double>(r.n_count) + d);
}

double AdjSketch::query_weighted(NodeId u) const {
    if (config_.mode != SketchMode::kWeighted) {
        throw std::logic_error("query_weighted on a uniform-mode sketch");
    }
    auto r = scan<double>(u, [this](NodeId s) { return weight_sum(s); });
    if (r.n_count == 0) return 0.0;
    const double w = weight_sum(u);
    return w + w / static_cast<double>(r.n_count) * r.sum;
}

std::size_t AdjSketch::access_count_probe(NodeId u) const {
    std::size_t accesses = 0;
    (void)scan<std::uint64_t>(u, [this](NodeId s) { return degree(s); }, &accesses);
    return accesses;
}

std::uint64_t AdjSketch::degree(NodeId u) const noexcept {
    return u < rows_.size() ? rows_[u].degree : 0;
}

double AdjSketch::weight_sum(NodeId u) const noexcept {
    return u < weight_sums_.size() ? weight_sums_[u] : 0.0;
}

std::span<const NodeId> AdjSketch::slots(NodeId u) const noexcept {
    if (u >= rows_.size() || rows_[u].block == kNoBlock) return {};
    return {slot_pool_.data() + std::size_t{rows_[u].block} * config_.q, config_.q};
}

std::uint64_t AdjSketch::state_hash() const {
    Fnv1a f;
    f.add(config_.q);
    f.add(std::bit_cast<std::uint64_t>(config_.lambda));
    f.add(config_.seed);
    f.add(static_cast<std::uint64_t>(config_.mode));
    f.add(events_);
    for (NodeId u = 0; u < rows_.size(); ++u) {
        if (rows_[u].degree == 0) continue;
        f.add(u);
        f.add(rows_[u].degree);
        f.add(std::bit_cast<std::uint64_t>(weight_sum(u)));
        for (NodeId s : slots(u)) f.add(s);
    }
    std::ostringstream rng_state;
    rng_state << rng_;
    f.add(rng_state.str());
    return f.h;
}

void AdjSketch::save(std::ostream& out) const {
    out << kSnapshotMagic << ' ' << kSnapshotVersion << '\n';
    out << "mode " << (config_.mode == SketchMode::kWeighted ? "weighted" : "uniform") << '\n';
    out << "q " << config_.q << '\n';
    out << "lambda " << format_hex_double(config_.lambda) << '\n';
    out << "seed " << config_.seed << '\n';
    out << "events " << events_ << '\n';
    out << "rng " << rng_ << '\n';
    out << "rows " << row_count_ << '\n';
    for (NodeId u = 0; u < rows_.size(); ++u) {
        if (rows_[u].block == kNoBlock) continue;
        out << u << ' ' << rows_[u].degree << ' ' << format_hex_double(weight_sum(u));
        for (NodeId s : slots(u)) {
            out << ' ';
            if (s == kNoNode) {
                out << '-';
            } else {
                out << s;
            }
        }
        out << '\n';
    }
    out << "end\n";
}

AdjSketch AdjSketch::load(std::istream& in) {
    std::string magic;
    int version = 0;
    if (!(in >> magic >> version) || magic != kSnapshotMagic) {
        throw std::runtime_error("sketch snapshot: bad header");
    }
    if (version != kSnapshotVersion) {
        throw std::runtime_error("sketch snapshot: unsupported version " + std::to_string(version));
    }
    SketchConfig cfg;
    auto mode = expect_field<std::string>(in, "mode");
    if (mode == "uniform") {
        cfg.mode = SketchMode::kUniform;
    } else if (mode == "weighted") {
        cfg.mode = SketchMode::kWeighted;
    } else {
        throw std::runtime_error("sketch snapshot: unknown mode " + mode);
    }
    cfg.q = expect_field<std::size_t>(in, "q");
    cfg.lambda = parse_double(expect_field<std::string>(in, "lambda"));
    cfg.seed = expect_field<std::uint64_t>(in, "seed");
    AdjSketch sketch(cfg);
    sketch.events_ = expect_field<std::uint64_t>(in, "events");
    std::string key;
    if (!(in >> key) || key != "rng" || !(in >> sketch.rng_)) {
        throw std::runtime_error("sketch snapshot: expected 'rng'");
    }
    auto rows = expect_field<std::size_t>(in, "rows");
    for (std::size_t i = 0; i < rows; ++i) {
        NodeId u = 0;
        std::uint64_t degree = 0;
        std::string weight;
        if (!(in >> u >> degree >> weight) || degree == 0) {
            throw std::runtime_error("sketch snapshot: bad row " + std::to_string(i));
        }
        Row& row = sketch.row_for_update(u);
        if (row.block != kNoBlock) throw std::runtime_error("sketch snapshot: duplicate row");
        row.degree = degree;
        row.block = static_cast<std::uint32_t>(sketch.slot_pool_.size() / cfg.q);
        ++sketch.row_count_;
        for (std::size_t j = 0; j < cfg.q; ++j) {
            std::string cell;
            if (!(in >> cell)) throw std::runtime_error("sketch snapshot: truncated row");
            sketch.slot_pool_.push_back(cell == "-" ? kNoNode
                                                    : static_cast<NodeId>(std::stoul(cell)));
        }
        if (cfg.mode == SketchMode::kWeighted) sketch.weight_sums_[u] = parse_double(weight);
    }
    if (!(in >> key) || key != "end") throw std::runtime_error("sketch snapshot: missing 'end'");
    return sketch;
}

bool operator==(const AdjSketch& a, const AdjSketch& b) {
    if (a.config_.q != b.config_.q || a.config_.mode != b.config_.mode ||
        a.config_.seed != b.config_.seed ||
        std::bit_cast<std::uint64_t>(a.config_.lambda) !=
            std::bit_cast<std::uint64_t>(b.config_.lambda) ||
        a.events_ != b.events_ || a.row_count_ != b.row_count_ || a.rng_ != b.rng_) {
        return false;
    }
    const std::size_t n = std::max(a.rows_.size(), b.rows_.size());
    for (std::size_t i = 0; i < n; ++i) {
        auto u = static_cast<NodeId>(i);
        if (a.degree(u) != b.degree(u) ||
            std::bit_cast<std::uint64_t>(a.weight_sum(u)) !=
                std::bit_cast<std::uint64_t>(b.weight_sum(u))) {
            return false;
        }
        auto sa = a.slots(u);
        auto sb = b.slots(u);
        if (!std::equal(sa.begin(), sa.end(), sb.begin(), sb.end())) return false;
    }
    return true;
}

}  // namespace ddstream
