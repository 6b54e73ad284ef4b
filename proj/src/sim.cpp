#include "polyguard/sim.hpp"

#include <algorithm>
#include <set>

#include "polyguard/config.hpp"

namespace polyguard {

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

World::World(std::shared_ptr<const SimplePolygon> polygon, Perception mode, int agent_count,
             size_t start_vertex, uint64_t)
    : poly_(std::move(polygon)), perception_(mode), start_vertex_(start_vertex) {
    if (agent_count < 1) throw BadInput("need at least one agent");
    if ((size_t)agent_count > poly_->size())
        throw BadInput("agent count above the vertex count");
    if (start_vertex >= poly_->size()) throw BadInput("start vertex out of range");
    agents_.resize((size_t)agent_count);
    for (int i = 0; i < agent_count; i++) {
        AgentState& a = agents_[(size_t)i];
        a.id = i + 1;
        a.vertex = (int)start_vertex;
        a.position = poly_->vertex(start_vertex);
        a.escort = (i == 0) ? 0 : 1;
    }
}

std::vector<int> World::agents_at(Point p, int excluding) const {
    std::vector<int> out;
    for (const AgentState& a : agents_)
        if (a.id != excluding && a.position == p) out.push_back(a.id);
    return out;
}

bool World::mutually_visible(Point a, Point b) const {
    if (a == b) return true;
    std::array<double, 4> key{a.x, a.y, b.x, b.y};
    if (b.x < a.x || (b.x == a.x && b.y < a.y)) key = {b.x, b.y, a.x, a.y};
    auto it = visible_cache_.find(key);
    if (it != visible_cache_.end()) return it->second;
    bool v = points_visible(*poly_, a, b);
    visible_cache_[key] = v;
    return v;
}

const VertexLimitedVisibilityPolygon& World::view_region(size_t vertex) const {
    auto it = vlvp_cache_.find(vertex);
    if (it != vlvp_cache_.end()) return it->second;
    size_t orient = (vertex + 1) % poly_->size();
    auto r = vertex_limited_visibility_polygon(*poly_, poly_->vertex(vertex), orient);
    return vlvp_cache_.emplace(vertex, std::move(r)).first->second;
}

void World::compute_territory(int agent_id) const {
    const AgentState& a = agents_[(size_t)agent_id - 1];
    if (!a.settled()) throw ProtocolViolation("territory of an unsettled agent");
    TerritoryInfo info;
    size_t n = poly_->size();
    size_t sv = (size_t)a.settled_vertex;

    const SimplePolygon* domain = poly_.get();
    std::vector<size_t> vmap;  // domain vertex -> polygon vertex
    SimplePolygon cropped = SimplePolygon::trusted({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    if (a.parent != 0) {
        Point parent_pos = agents_[(size_t)a.parent - 1].position;
        cropped = crop(*poly_, parent_pos, sv, (size_t)a.orient, &vmap);
        domain = &cropped;
    } else {
        vmap.resize(n);
        for (size_t i = 0; i < n; i++) vmap[i] = i;
    }
    size_t local_v = 0, local_o = 0;
    for (size_t i = 0; i < vmap.size(); i++) {
        if (vmap[i] == sv) local_v = i;
        if (a.orient >= 0 && vmap[i] == (size_t)a.orient) local_o = i;
    }
    auto vl = vertex_limited_visibility_polygon(
        *domain, domain->vertex(local_v),
        a.orient >= 0 ? std::optional<size_t>(local_o)
                      : std::optional<size_t>((local_v + 1) % domain->size()));
    info.ring = vl.ring(*domain);
    info.area = signed_area(info.ring);

    // gap edges in polygon indices, clockwise starting at the orientation ray
    size_t m = vl.vertex_ids.size();
    std::vector<std::pair<int, int>> gaps_ccw;
    for (size_t i = 0; i < m; i++)
        if (vl.edges[i].gap)
            gaps_ccw.emplace_back((int)vmap[(size_t)vl.vertex_ids[i]],
                                  (int)vmap[(size_t)vl.vertex_ids[(i + 1) % m]]);
    std::reverse(gaps_ccw.begin(), gaps_ccw.end());  // clockwise walk order
    info.gaps = std::move(gaps_ccw);
    territory_cache_[agent_id] = std::move(info);
}

const TerritoryInfo& World::territory(int agent_id) const {
    auto it = territory_cache_.find(agent_id);
    if (it == territory_cache_.end()) {
        compute_territory(agent_id);
        it = territory_cache_.find(agent_id);
    }
    return it->second;
}

View::View(const World& w, int self) : w_(w), self_(w.agent(self)) {
    here_ = w.agents_at(self_.position, self);
}

std::vector<int> View::visible_agents() const {
    std::vector<int> out;
    for (const AgentState& a : w_.agents()) {
        if (a.id == self_.id || a.position == self_.position) continue;
        if (w_.mutually_visible(self_.position, a.position)) out.push_back(a.id);
    }
    return out;
}

const VertexLimitedVisibilityPolygon& View::region() const {
    if (self_.vertex < 0) throw ProtocolViolation("view region off-vertex");
    return w_.view_region((size_t)self_.vertex);
}

std::pair<std::vector<int>, std::vector<bool>> View::sequence() const {
    const auto& r = region();
    size_t m = r.vertex_ids.size();
    int orient = self_.orient >= 0 ? self_.orient
                                   : (int)(((size_t)self_.vertex + 1) % w_.polygon().size());
    size_t at = 0;
    for (size_t i = 0; i < m; i++)
        if (r.vertex_ids[i] == orient) at = i;
    std::vector<int> verts;
    std::vector<bool> gap;
    // clockwise = reversed ccw walk; edge before vertex i in ccw is edge i-1
    for (size_t k = 0; k < m; k++) {
        size_t i = (at + m - k) % m;
        verts.push_back(r.vertex_ids[i]);
        gap.push_back(r.edges[(i + m - 1) % m].gap);
    }
    return {verts, gap};
}

ObjectRef View::closer(ObjectRef a, ObjectRef b) const {
    double da = object_distance(w_.polygon(), a, self_.position);
    double db = object_distance(w_.polygon(), b, self_.position);
    return da <= db ? a : b;
}

void World::step(Protocol& proto) {
    size_t k = agents_.size();
    std::vector<View> views;
    views.reserve(k);
    for (size_t i = 0; i < k; i++) views.emplace_back(*this, (int)i + 1);

    // communicate: composed from pre-round state + view, delivered this round
    std::vector<Message> sent;
    std::set<std::pair<int, int>> pairs;
    for (size_t i = 0; i < k; i++) {
        std::vector<Message> out;
        proto.communicate(*this, agents_[i], views[i], out);
        for (Message& msg : out) {
            msg.from = agents_[i].id;
            if (msg.to < 1 || msg.to > (int)k)
                throw ProtocolViolation("message to unknown agent");
            if (msg.to == msg.from) throw ProtocolViolation("message to self");
            if (!pairs.insert({msg.from, msg.to}).second)
                throw ProtocolViolation("second message to the same agent in one round");
            if (!mutually_visible(agents_[i].position, agent(msg.to).position))
                throw ProtocolViolation("message between agents not in line of sight");
            sent.push_back(std::move(msg));
        }
    }
    std::vector<std::vector<Message>> inbox(k);
    for (const Message& m : sent) inbox[(size_t)m.to - 1].push_back(m);

    // act: moves and settles decided from state + view + this round's inbox
    std::vector<World::Actions> acts(k);
    for (size_t i = 0; i < k; i++) proto.act(*this, agents_[i], views[i], inbox[i], acts[i]);

    json moves = json::array();
    std::vector<int> settled_now;
    for (size_t i = 0; i < k; i++) {
        AgentState& a = agents_[i];
        const Actions& act = acts[i];
        if (act.settle && (act.move_to_vertex || act.move_to_point))
            throw ProtocolViolation("settle and move in the same round");
        if (act.move_to_vertex) {
            if (a.settled()) throw ProtocolViolation("settled agent tried to move");
            int tv = *act.move_to_vertex;
            if (tv < 0 || (size_t)tv >= poly_->size())
                throw ProtocolViolation("move to invalid vertex");
            Point target = poly_->vertex((size_t)tv);
            if (!mutually_visible(a.position, target))
                throw ProtocolViolation("proximity move without line of sight");
            moves.push_back({{"id", a.id}, {"vertex", tv}});
            a.position = target;
            a.vertex = tv;
        } else if (act.move_to_point) {
            if (perception_ != Perception::depth)
                throw ProtocolViolation("free move needs depth perception");
            if (a.settled()) throw ProtocolViolation("settled agent tried to move");
            Point target = *act.move_to_point;
            if (poly_->locate(target) == PointLocation::outside)
                throw ProtocolViolation("move outside the polygon");
            if (!mutually_visible(a.position, target))
                throw ProtocolViolation("depth move outside the visibility polygon");
            moves.push_back({{"id", a.id}, {"to", {target.x, target.y}}});
            a.position = target;
            auto v = poly_->vertex_at(target);
            a.vertex = v ? (int)*v : -1;
        }
        if (act.settle) {
            if (a.settled()) throw ProtocolViolation("double settle");
            a.status = AgentState::Status::settled;
            a.settled_vertex = a.vertex;
            a.parent = act.settle_parent;
            a.orient = act.settle_orient;
            a.escort = 0;
            settled_now.push_back(a.id);
        }
        if (act.escort) a.escort = *act.escort;
        if (act.halt) a.halted = true;
    }

    round_++;
    json msgs = json::array();
    for (const Message& m : sent)
        msgs.push_back({{"from", m.from}, {"to", m.to}, {"kind", m.kind}, {"p", m.payload}});
    int settled_total = 0;
    for (const AgentState& a : agents_)
        if (a.settled()) settled_total++;
    trace_.push_back({{"round", round_},
                      {"messages", msgs},
                      {"moves", moves},
                      {"settled_now", settled_now},
                      {"metrics", {{"agents", k}, {"settled", settled_total}}}});
    check_connectivity();
}

void World::check_connectivity() const {
    size_t k = agents_.size();
    std::vector<int> uf(k);
    for (size_t i = 0; i < k; i++) uf[i] = (int)i;
    auto find = [&](int x) {
        while (uf[(size_t)x] != x) x = uf[(size_t)x] = uf[(size_t)uf[(size_t)x]];
        return x;
    };
    auto join = [&](int a, int b) { uf[(size_t)find(a)] = find(b); };

    // co-located agents
    std::vector<int> order(k);
    for (size_t i = 0; i < k; i++) order[i] = (int)i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        Point pa = agents_[(size_t)a].position, pb = agents_[(size_t)b].position;
        return pa < pb;
    });
    for (size_t i = 0; i + 1 < k; i++)
        if (agents_[(size_t)order[i]].position == agents_[(size_t)order[i + 1]].position)
            join(order[i], order[i + 1]);

    auto link = [&](const AgentState& a, int other_id, const char* what) {
        const AgentState& b = agents_[(size_t)other_id - 1];
        if (!mutually_visible(a.position, b.position))
            throw ProtocolViolation(std::string("connectivity: ") + what +
                                    " link not in line of sight");
        join(a.id - 1, b.id - 1);
    };
    for (const AgentState& a : agents_) {
        if (a.settled() && a.parent != 0) link(a, a.parent, "parent");
        if (!a.settled() && a.escort != 0) link(a, a.escort, "escort");
    }
    int root = find(0);
    for (size_t i = 0; i < k; i++)
        if (find((int)i) != root)
            throw ProtocolViolation("agents' visibility structure disconnected");
}

TerritoryTree build_territory_tree(const World& w) {
    TerritoryTree t;
    for (const AgentState& a : w.agents())
        if (a.settled()) {
            t.agents.push_back(a.id);
            t.parent[a.id] = a.parent;
        }
    // unweighted diameter by double sweep over the tree
    if (t.agents.empty()) return t;
    std::map<int, std::vector<int>> adj;
    for (auto [c, p] : t.parent)
        if (p != 0) {
            adj[c].push_back(p);
            adj[p].push_back(c);
        }
    auto far = [&](int s) {
        std::map<int, int> d{{s, 0}};
        std::vector<int> q{s};
        std::pair<int, int> best{s, 0};
        for (size_t h = 0; h < q.size(); h++) {
            int u = q[h];
            if (d[u] > best.second) best = {u, d[u]};
            for (int v : adj[u])
                if (!d.count(v)) {
                    d[v] = d[u] + 1;
                    q.push_back(v);
                }
        }
        return best;
    };
    auto [a, _] = far(t.agents.front());
    t.diameter = far(a).second;
    return t;
}

}  // namespace polyguard
