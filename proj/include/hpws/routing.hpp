#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "hpws/error.hpp"
#include "hpws/spanner.hpp"

namespace hpws {

/// Per-neighbor entry: the neighbor's label x_v plus the high ends of the
/// intervals of b_v and h(v). Both intervals share x_v as their low end, so
/// three numbers suffice (3 lg n bits).
struct RoutingEntry {
    Label x_v = 0;
    Label y_b = 0;
    Label y_h = 0;

    bool operator==(const RoutingEntry&) const = default;
};

struct RoutingTable {
    Label x_u = 0;
    std::vector<RoutingEntry> entries;

    bool operator==(const RoutingTable&) const = default;
};

/// Tables indexed by label (position 0 unused). For edge {u,v} from pair
/// {a,b} with u = r(a), v = r(b): u's entry for v carries (label(v),
/// hi(interval(b)), hi(interval(h(v)))), and symmetrically at v.
inline std::vector<RoutingTable> make_routing_tables(const SpannerGraph& g,
                                                     const HeavyPathLabelling& hl) {
    std::vector<RoutingTable> tables(g.size() + 1);
    for (Label u = 1; u <= g.size(); ++u) tables[u].x_u = u;
    for (const SpannerEdge& e : g.edges()) {
        tables[e.u].entries.push_back({e.v, e.b_interval.hi, hl.apex_interval(e.v).hi});
        tables[e.v].entries.push_back({e.u, e.a_interval.hi, hl.apex_interval(e.u).hi});
    }
    return tables;
}

struct StepResult {
    Label next = 0;
    bool descending = false;
};

/// One forwarding decision, memoryless: a pure function of the current label,
/// the destination label, and the local table. Descending first (the unique
/// entry whose b-interval holds the destination), otherwise ascend to the
/// neighbor whose apex interval containing x_u is minimal under containment.
inline StepResult route_step(Label x_u, Label x_q, const RoutingTable& table) {
    require(x_u != x_q, errc::invalid_argument, "already at destination");
    require(table.x_u == x_u, errc::invalid_argument, "table does not belong to current vertex");
    for (const RoutingEntry& e : table.entries)
        if (e.x_v <= x_q && x_q <= e.y_b) return {e.x_v, true};

    const RoutingEntry* best = nullptr;
    for (const RoutingEntry& e : table.entries) {
        if (!(e.x_v <= x_u && x_u <= e.y_h)) continue;
        if (!best || e.y_h - e.x_v < best->y_h - best->x_v) best = &e;
    }
    require(best != nullptr, errc::routing_failure,
            "no forwarding candidate at " + std::to_string(x_u) + " toward " + std::to_string(x_q));
    return {best->x_v, false};
}

struct RouteResult {
    std::vector<Label> vertices;       // p first; q last
    std::vector<bool> descending;      // per hop
    std::size_t hops() const { return vertices.size() - 1; }
};

inline std::size_t route_step_budget(std::size_t n) {
    std::size_t lg = n <= 1 ? 0 : std::bit_width(n - 1);  // ceil(log2 n)
    return 2 * lg + 1;
}

/// Repeated route_step until the destination; aborts past the 2 ceil(lg n)+1
/// step budget, which a correct build never reaches.
inline RouteResult route(const std::vector<RoutingTable>& tables, Label p, Label q) {
    std::size_t n = tables.size() - 1;
    require(1 <= p && p <= n && 1 <= q && q <= n, errc::invalid_argument, "unknown label");
    RouteResult out;
    out.vertices.push_back(p);
    std::size_t budget = route_step_budget(n);
    Label u = p;
    while (u != q) {
        require(out.hops() < budget, errc::routing_failure,
                "step budget exceeded routing " + std::to_string(p) + " -> " + std::to_string(q));
        StepResult step = route_step(u, q, tables[u]);
        out.vertices.push_back(step.next);
        out.descending.push_back(step.descending);
        u = step.next;
    }
    return out;
}

inline std::size_t ceil_log2(std::size_t n) { return n <= 1 ? 0 : std::bit_width(n - 1); }

struct PackedTable {
    std::vector<std::uint8_t> bytes;
    std::size_t bits = 0;
};

namespace detail {
inline void append_bits(PackedTable& out, std::uint64_t value, std::size_t width) {
    for (std::size_t i = 0; i < width; ++i) {
        std::size_t bit = out.bits + i;
        if (bit / 8 >= out.bytes.size()) out.bytes.push_back(0);
        if ((value >> i) & 1u) out.bytes[bit / 8] |= std::uint8_t(1u << (bit % 8));
    }
    out.bits += width;
}

inline std::uint64_t read_bits(const PackedTable& in, std::size_t pos, std::size_t width) {
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < width; ++i) {
        std::size_t bit = pos + i;
        if ((in.bytes[bit / 8] >> (bit % 8)) & 1u) value |= std::uint64_t(1) << i;
    }
    return value;
}
}  // namespace detail

/// Fixed-width ceil(lg n)-bit fields, little-endian bit order: x_u then
/// (x_v, y_b, y_h) per entry. Labels are stored 0-based. Total footprint is
/// exactly (3 deg(u) + 1) ceil(lg n) bits.
inline PackedTable pack_routing_table(const RoutingTable& t, std::size_t n) {
    std::size_t w = ceil_log2(n);
    PackedTable out;
    detail::append_bits(out, t.x_u - 1, w);
    for (const RoutingEntry& e : t.entries) {
        detail::append_bits(out, e.x_v - 1, w);
        detail::append_bits(out, e.y_b - 1, w);
        detail::append_bits(out, e.y_h - 1, w);
    }
    return out;
}

inline RoutingTable unpack_routing_table(const PackedTable& in, std::size_t n,
                                         std::size_t degree) {
    std::size_t w = ceil_log2(n);
    require(in.bits == (3 * degree + 1) * w, errc::corrupt_structure, "packed table size mismatch");
    RoutingTable t;
    std::size_t pos = 0;
    auto next = [&] {
        Label v = Label(detail::read_bits(in, pos, w)) + 1;
        pos += w;
        return v;
    };
    t.x_u = next();
    for (std::size_t i = 0; i < degree; ++i) {
        RoutingEntry e;
        e.x_v = next();
        e.y_b = next();
        e.y_h = next();
        t.entries.push_back(e);
    }
    return t;
}

}  // namespace hpws
