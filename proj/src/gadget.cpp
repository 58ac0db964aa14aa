#include "urm/gadget.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "urm/errors.hpp"
#include "urm/verify.hpp"

namespace urm {

std::vector<E3CInstance> parse_e3c(std::istream& in) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad JSON: ") + e.what(), 0);
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("instances"))
        throw parse_error("expected {\"n\": int, \"instances\": [...]}", 0);
    int n = doc["n"].get<int>();
    if (n <= 0 || n % 3 != 0) throw parse_error("universe size must be a positive multiple of 3", 0);
    std::vector<E3CInstance> out;
    for (const auto& inst : doc["instances"]) {
        E3CInstance e;
        e.universe_size = n;
        for (const auto& t : inst) {
            if (!t.is_array() || t.size() != 3) throw parse_error("triple must have 3 elements", 0);
            Triple triple{t[0].get<int>(), t[1].get<int>(), t[2].get<int>()};
            std::sort(triple.begin(), triple.end());
            if (triple[0] < 1 || triple[2] > n || triple[0] == triple[1] || triple[1] == triple[2])
                throw parse_error("triple elements must be distinct members of [1..n]", 0);
            e.triples.push_back(triple);
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<E3CInstance> read_e3c_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'", 0);
    return parse_e3c(in);
}

std::optional<std::vector<Triple>> e3c_solve(const E3CInstance& inst, int triple_cap) {
    if (static_cast<int>(inst.triples.size()) > triple_cap)
        throw resource_error("instance exceeds the exact-cover triple cap");
    const int n = inst.universe_size;
    std::vector<char> covered(n + 1, 0);
    std::vector<Triple> chosen;

    auto search = [&](auto&& self) -> bool {
        int e = 1;
        while (e <= n && covered[e]) ++e;
        if (e > n) return true;
        for (const Triple& t : inst.triples) {
            if (t[0] != e && t[1] != e && t[2] != e) continue;
            if (covered[t[0]] || covered[t[1]] || covered[t[2]]) continue;
            covered[t[0]] = covered[t[1]] = covered[t[2]] = 1;
            chosen.push_back(t);
            if (self(self)) return true;
            chosen.pop_back();
            covered[t[0]] = covered[t[1]] = covered[t[2]] = 0;
        }
        return false;
    };
    if (!search(search)) return std::nullopt;
    return chosen;
}

namespace {

constexpr int kGadgetSize = 14;
// Offsets inside one set gadget block.
constexpr int kP = 0, kQ = 1, kR = 2, kS = 3;
constexpr int kW = 4;       // +0..2 element slots, +3 = w1, +4 = w2
constexpr int kWPrime = 9;  // +0..2 element slots, +3 = w'1, +4 = w'2

} // namespace

Vertex GadgetLayout::v_of(int element) const { return 4 * (element - 1); }
Vertex GadgetLayout::v_prime(int element) const { return 4 * (element - 1) + 1; }
Vertex GadgetLayout::u_of(int element) const { return 4 * (element - 1) + 2; }
Vertex GadgetLayout::u_prime(int element) const { return 4 * (element - 1) + 3; }
Vertex GadgetLayout::p(int gadget) const { return 4 * universe_size + kGadgetSize * gadget + kP; }
Vertex GadgetLayout::q(int gadget) const { return 4 * universe_size + kGadgetSize * gadget + kQ; }
Vertex GadgetLayout::r(int gadget) const { return 4 * universe_size + kGadgetSize * gadget + kR; }
Vertex GadgetLayout::s(int gadget) const { return 4 * universe_size + kGadgetSize * gadget + kS; }
Vertex GadgetLayout::w(int gadget, int slot) const {
    return 4 * universe_size + kGadgetSize * gadget + kW + slot;
}
Vertex GadgetLayout::w_prime(int gadget, int slot) const {
    return 4 * universe_size + kGadgetSize * gadget + kWPrime + slot;
}
Vertex GadgetLayout::y() const {
    return 4 * universe_size + kGadgetSize * static_cast<int>(collection.size());
}
Vertex GadgetLayout::x(int instance) const { return y() + 1 + instance; }

std::vector<Edge> GadgetLayout::diamond_edges(int gadget) const {
    return {Edge(p(gadget), q(gadget)), Edge(q(gadget), r(gadget)),
            Edge(r(gadget), s(gadget)), Edge(p(gadget), r(gadget))};
}

GadgetLayout build_gadget(const std::vector<E3CInstance>& instances) {
    if (instances.empty()) throw contract_error("at least one instance is required");
    const int n = instances[0].universe_size;
    if (n <= 0 || n % 3 != 0) throw contract_error("universe size must be a positive multiple of 3");
    std::set<std::vector<Triple>> distinct;
    for (const auto& inst : instances) {
        if (inst.universe_size != n) throw contract_error("instances must share the universe");
        std::vector<Triple> canon = inst.triples;
        std::sort(canon.begin(), canon.end());
        canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
        if (!distinct.insert(canon).second)
            throw contract_error("duplicate triple collections across instances");
    }

    GadgetLayout L;
    L.universe_size = n;
    L.instance_count = static_cast<int>(instances.size());

    std::set<Triple> pool;
    for (const auto& inst : instances)
        for (const Triple& t : inst.triples) pool.insert(t);
    L.collection.assign(pool.begin(), pool.end());
    const int csize = static_cast<int>(L.collection.size());
    std::map<Triple, int> collection_index;
    for (int j = 0; j < csize; ++j) collection_index[L.collection[j]] = j;
    for (const auto& inst : instances) {
        std::vector<int> members;
        for (const Triple& t : inst.triples) members.push_back(collection_index[t]);
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        L.instance_members.push_back(std::move(members));
    }

    L.target = 4 * csize + (8 * n) / 3 + 1;
    const int total = 4 * n + kGadgetSize * csize + 1 + L.instance_count;
    L.graph = Graph(total);
    L.roles.assign(total, "");

    auto add = [&](Vertex a, Vertex b, EdgeType ty) {
        L.graph.add_edge(a, b);
        L.edge_types[Edge(a, b)] = ty;
    };

    for (int a = 1; a <= n; ++a) {
        L.roles[L.v_of(a)] = "v[" + std::to_string(a) + "]";
        L.roles[L.v_prime(a)] = "v'[" + std::to_string(a) + "]";
        L.roles[L.u_of(a)] = "u[" + std::to_string(a) + "]";
        L.roles[L.u_prime(a)] = "u'[" + std::to_string(a) + "]";
        add(L.v_of(a), L.v_prime(a), EdgeType::I);
        add(L.v_prime(a), L.u_prime(a), EdgeType::I);
        add(L.u_prime(a), L.u_of(a), EdgeType::I);
        add(L.u_of(a), L.v_of(a), EdgeType::I);
    }

    for (int j = 0; j < csize; ++j) {
        const Triple& t = L.collection[j];
        const std::string js = std::to_string(j);
        L.roles[L.p(j)] = "p[" + js + "]";
        L.roles[L.q(j)] = "q[" + js + "]";
        L.roles[L.r(j)] = "r[" + js + "]";
        L.roles[L.s(j)] = "s[" + js + "]";
        for (int slot = 0; slot < 3; ++slot) {
            L.roles[L.w(j, slot)] = "w[" + js + "][" + std::to_string(t[slot]) + "]";
            L.roles[L.w_prime(j, slot)] = "w'[" + js + "][" + std::to_string(t[slot]) + "]";
        }
        L.roles[L.w(j, 3)] = "w[" + js + "][1]";
        L.roles[L.w(j, 4)] = "w[" + js + "][2]";
        L.roles[L.w_prime(j, 3)] = "w'[" + js + "][1]";
        L.roles[L.w_prime(j, 4)] = "w'[" + js + "][2]";

        // Fans: w1 and p see w2 and the three interface vertices.
        add(L.w(j, 3), L.w(j, 4), EdgeType::III);
        add(L.w_prime(j, 3), L.w_prime(j, 4), EdgeType::III);
        add(L.w(j, 4), L.p(j), EdgeType::III);
        add(L.w_prime(j, 4), L.s(j), EdgeType::III);
        for (int slot = 0; slot < 3; ++slot) {
            add(L.w(j, 3), L.w(j, slot), EdgeType::III);
            add(L.w(j, slot), L.p(j), EdgeType::III);
            add(L.w_prime(j, 3), L.w_prime(j, slot), EdgeType::III);
            add(L.w_prime(j, slot), L.s(j), EdgeType::III);
        }
        add(L.p(j), L.q(j), EdgeType::IV);
        add(L.q(j), L.r(j), EdgeType::IV);
        add(L.s(j), L.r(j), EdgeType::IV);
        add(L.p(j), L.r(j), EdgeType::IV);

        // Interface to the element rings.
        for (int slot = 0; slot < 3; ++slot) {
            add(L.w(j, slot), L.v_of(t[slot]), EdgeType::II_vertical);
            add(L.w_prime(j, slot), L.v_prime(t[slot]), EdgeType::II_vertical);
        }
    }

    // Horizontal links between gadgets sharing an element.
    for (int j = 0; j < csize; ++j) {
        for (int k = j + 1; k < csize; ++k) {
            for (int sj = 0; sj < 3; ++sj) {
                for (int sk = 0; sk < 3; ++sk) {
                    if (L.collection[j][sj] != L.collection[k][sk]) continue;
                    add(L.w(j, sj), L.w_prime(k, sk), EdgeType::II_horizontal);
                    add(L.w_prime(j, sj), L.w(k, sk), EdgeType::II_horizontal);
                }
            }
        }
    }

    // Instance selector.
    L.roles[L.y()] = "y";
    for (int i = 0; i < L.instance_count; ++i) {
        L.roles[L.x(i)] = "x[" + std::to_string(i) + "]";
        add(L.x(i), L.y(), EdgeType::V);
    }
    std::set<int> y_linked;
    for (int i = 0; i < L.instance_count; ++i) {
        std::set<int> inside(L.instance_members[i].begin(), L.instance_members[i].end());
        for (int j = 0; j < csize; ++j) {
            if (inside.count(j)) continue;
            for (int slot = 0; slot < 3; ++slot) add(L.x(i), L.w(j, slot), EdgeType::III);
            add(L.x(i), L.w(j, 4), EdgeType::III);
            if (y_linked.insert(j).second) {
                for (int slot = 0; slot < 3; ++slot)
                    add(L.y(), L.w_prime(j, slot), EdgeType::III);
                add(L.y(), L.w_prime(j, 4), EdgeType::III);
            }
        }
    }
    return L;
}

Matching witness_matching_from_cover(const GadgetLayout& layout, int instance_index,
                                     const std::vector<Triple>& cover) {
    const int n = layout.universe_size;
    if (instance_index < 0 || instance_index >= layout.instance_count)
        throw contract_error("instance index out of range");

    std::set<int> member_set(layout.instance_members[instance_index].begin(),
                             layout.instance_members[instance_index].end());
    std::vector<char> seen(n + 1, 0);
    std::set<int> cover_gadgets;
    for (const Triple& t : cover) {
        auto it = std::find(layout.collection.begin(), layout.collection.end(), t);
        if (it == layout.collection.end())
            throw contract_error("cover triple missing from the collection");
        int j = static_cast<int>(it - layout.collection.begin());
        if (!member_set.count(j))
            throw contract_error("cover triple does not belong to the chosen instance");
        cover_gadgets.insert(j);
        for (int e : t) {
            if (seen[e]) throw contract_error("cover triples overlap");
            seen[e] = 1;
        }
    }
    for (int e = 1; e <= n; ++e)
        if (!seen[e]) throw contract_error("cover misses an element");

    std::vector<Edge> edges;
    for (int a = 1; a <= n; ++a) edges.emplace_back(layout.u_of(a), layout.u_prime(a));
    for (int j : cover_gadgets) {
        const Triple& t = layout.collection[j];
        for (int slot = 0; slot < 3; ++slot) {
            edges.emplace_back(layout.v_of(t[slot]), layout.w(j, slot));
            edges.emplace_back(layout.v_prime(t[slot]), layout.w_prime(j, slot));
        }
    }
    for (int j = 0; j < static_cast<int>(layout.collection.size()); ++j) {
        edges.emplace_back(layout.w(j, 3), layout.w(j, 4));
        edges.emplace_back(layout.w_prime(j, 3), layout.w_prime(j, 4));
        if (cover_gadgets.count(j)) {
            edges.emplace_back(layout.q(j), layout.r(j));
        } else {
            edges.emplace_back(layout.p(j), layout.q(j));
            edges.emplace_back(layout.r(j), layout.s(j));
        }
    }
    edges.emplace_back(layout.x(instance_index), layout.y());

    Matching m(layout.graph, std::move(edges));
    if (m.size() != layout.target)
        throw internal_error("witness matching has the wrong size");
    if (!verify_urm_cycle(layout.graph, m).uniquely_restricted)
        throw internal_error("witness matching is not uniquely restricted");
    return m;
}

namespace {

const char* type_name(EdgeType t) {
    switch (t) {
        case EdgeType::I: return "I";
        case EdgeType::II_vertical: return "II-vertical";
        case EdgeType::II_horizontal: return "II-horizontal";
        case EdgeType::III: return "III";
        case EdgeType::IV: return "IV";
        case EdgeType::V: return "V";
    }
    return "?";
}

} // namespace

BoundsReport check_structural_bounds(const GadgetLayout& layout, const Matching& m) {
    BoundsReport report;
    auto fail = [&](const std::string& msg) {
        report.ok = false;
        report.violations.push_back(msg);
    };

    if (!verify_urm_cycle(layout.graph, m).uniquely_restricted) {
        fail("matching is not uniquely restricted");
        return report;
    }

    const int n = layout.universe_size;
    const int csize = static_cast<int>(layout.collection.size());
    std::map<std::string, int> counts;
    std::vector<int> index_use(n + 1, 0);
    for (const Edge& e : m.edges()) {
        auto it = layout.edge_types.find(e);
        if (it == layout.edge_types.end()) {
            fail("matching edge missing an edge type");
            return report;
        }
        ++counts[type_name(it->second)];
        if (it->second == EdgeType::II_vertical || it->second == EdgeType::II_horizontal) {
            // The index of a link edge is the element both endpoints name.
            const std::string& ra = layout.roles[e.u];
            auto open = ra.rfind('[');
            int element = std::stoi(ra.substr(open + 1, ra.size() - open - 2));
            ++index_use[element];
        }
    }
    report.type_counts = counts;
    int type2 = counts["II-vertical"] + counts["II-horizontal"];

    if (counts["I"] > n) fail("type-I bound exceeded: more than n ring edges");
    if (counts["III"] > 2 * csize) fail("type-III bound exceeded");
    if (counts["IV"] > 2 * csize) fail("type-IV bound exceeded");
    if (counts["V"] > 1) fail("type-V bound exceeded");
    for (int e = 1; e <= n; ++e)
        if (index_use[e] > 2) fail("element " + std::to_string(e) + " used by more than two link edges");
    if (type2 > 2 * n) fail("type-II bound exceeded");

    for (int j = 0; j < csize; ++j) {
        int inside = 0;
        bool pq = false, rs = false;
        for (const Edge& e : layout.diamond_edges(j)) {
            if (m.contains(e)) {
                ++inside;
                if (e == Edge(layout.p(j), layout.q(j))) pq = true;
                if (e == Edge(layout.r(j), layout.s(j))) rs = true;
            }
        }
        if (inside > 2) fail("diamond holds more than two matching edges");
        if (inside == 2 && !(pq && rs))
            fail("a two-edge diamond must use exactly its outer pair");
        if (inside <= 1) report.sad_gadgets.push_back(j);
        else report.happy_gadgets.push_back(j);
    }

    if (m.size() == layout.target) {
        if (type2 != 2 * n) fail("full-size matching must use exactly 2n link edges");
        if (static_cast<int>(report.sad_gadgets.size()) != n / 3)
            fail("full-size matching must leave exactly n/3 sad gadgets");
        if (counts["V"] != 1) fail("full-size matching must use exactly one selector edge");
    }
    return report;
}

std::optional<ExtractedCover> extract_cover(const GadgetLayout& layout, const Matching& m,
                                            std::string* why) {
    auto explain = [&](const std::string& msg) {
        if (why) *why = msg;
        return std::nullopt;
    };
    if (m.size() < layout.target)
        throw contract_error("matching smaller than the construction target");

    int chosen = -1;
    for (int i = 0; i < layout.instance_count; ++i) {
        if (m.contains(Edge(layout.x(i), layout.y()))) {
            if (chosen >= 0) return explain("two selector edges present");
            chosen = i;
        }
    }
    if (chosen < 0) return explain("no selector edge present");

    std::vector<Triple> cover;
    const int csize = static_cast<int>(layout.collection.size());
    for (int j = 0; j < csize; ++j) {
        int inside = 0;
        for (const Edge& e : layout.diamond_edges(j))
            if (m.contains(e)) ++inside;
        if (inside <= 1) cover.push_back(layout.collection[j]);
    }
    if (static_cast<int>(cover.size()) != layout.universe_size / 3)
        return explain("sad-gadget count differs from n/3");

    std::set<int> members(layout.instance_members[chosen].begin(),
                          layout.instance_members[chosen].end());
    std::vector<char> seen(layout.universe_size + 1, 0);
    for (const Triple& t : cover) {
        auto it = std::find(layout.collection.begin(), layout.collection.end(), t);
        int j = static_cast<int>(it - layout.collection.begin());
        if (!members.count(j)) return explain("sad gadget outside the selected instance");
        for (int e : t) {
            if (seen[e]) return explain("sad gadgets overlap on an element");
            seen[e] = 1;
        }
    }
    for (int e = 1; e <= layout.universe_size; ++e)
        if (!seen[e]) return explain("sad gadgets miss an element");

    ExtractedCover out;
    out.instance_index = chosen;
    out.cover = std::move(cover);
    return out;
}

std::vector<Vertex> vertex_cover_witness(const GadgetLayout& layout) {
    std::vector<char> is_x(layout.graph.vertex_count(), 0);
    for (int i = 0; i < layout.instance_count; ++i) is_x[layout.x(i)] = 1;
    std::vector<Vertex> cover;
    for (int v = 0; v < layout.graph.vertex_count(); ++v)
        if (!is_x[v]) cover.push_back(v);

    for (const Edge& e : layout.graph.edges())
        if (is_x[e.u] && is_x[e.v])
            throw internal_error("selector leaves are not independent");
    const int expect = 4 * layout.universe_size +
                       kGadgetSize * static_cast<int>(layout.collection.size()) + 1;
    if (static_cast<int>(cover.size()) != expect)
        throw internal_error("vertex cover witness has the wrong size");
    long long n = layout.universe_size;
    if (static_cast<long long>(layout.collection.size()) > n * (n - 1) * (n - 2) / 6)
        throw internal_error("collection larger than the triple count allows");
    return cover;
}

std::string gadget_metadata_json(const GadgetLayout& layout) {
    nlohmann::json doc;
    doc["schema"] = "urm-gadget/1";
    doc["n"] = layout.universe_size;
    doc["t"] = layout.instance_count;
    doc["l"] = layout.target;
    doc["collection_size"] = layout.collection.size();
    doc["collection"] = layout.collection;
    doc["instances"] = layout.instance_members;
    doc["roles"] = layout.roles;
    nlohmann::json types = nlohmann::json::object();
    for (const auto& [edge, ty] : layout.edge_types)
        types[type_name(ty)].push_back({edge.u, edge.v});
    doc["edge_types"] = types;
    return doc.dump(2);
}

} // namespace urm
