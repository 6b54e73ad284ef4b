#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyguard/central.hpp"
#include "polyguard/medial.hpp"
#include "polyguard/visibility.hpp"

namespace polyguard {

using json = nlohmann::ordered_json;

enum class Perception { proximity, depth };

struct AgentState {
    int id = 0;  // unique, 1..n
    Point position;
    int vertex = -1;  // polygon vertex index when on one
    enum class Status { exploring, settled } status = Status::exploring;
    int settled_vertex = -1;
    int orient = -1;   // orientation vertex; for territory protocols the marked one
    int parent = 0;    // agent id, 0 = none
    int escort = 0;    // agent id an unsettled agent is tethered to (0 = none)
    bool halted = false;

    bool settled() const { return status == Status::settled; }
};

struct Message {
    int from = 0, to = 0;
    std::string kind;
    json payload;
};

// Gap edges of a settled agent's territory, clockwise from its orientation
// vertex. The world computes this once at settle time.
struct TerritoryInfo {
    std::vector<Point> ring;
    double area = 0;
    std::vector<std::pair<int, int>> gaps;  // vertex index pairs, cw order
};

struct TerritoryTree {
    std::vector<int> agents;    // settled agent ids
    std::map<int, int> parent;  // agent id -> parent agent id (0 for the root)
    int diameter = 0;
};

class Protocol;

class World {
  public:
    World(std::shared_ptr<const SimplePolygon> polygon, Perception mode, int agent_count,
          size_t start_vertex, uint64_t rng_seed = 0);

    const SimplePolygon& polygon() const { return *poly_; }
    Perception perception() const { return perception_; }
    int round() const { return round_; }
    size_t start_vertex() const { return start_vertex_; }

    std::vector<AgentState>& agents() { return agents_; }
    const std::vector<AgentState>& agents() const { return agents_; }
    AgentState& agent(int id) { return agents_[(size_t)id - 1]; }
    const AgentState& agent(int id) const { return agents_[(size_t)id - 1]; }

    std::vector<int> agents_at(Point p, int excluding = 0) const;
    bool mutually_visible(Point a, Point b) const;  // memoized

    const VertexLimitedVisibilityPolygon& view_region(size_t vertex) const;
    const TerritoryInfo& territory(int agent_id) const;

    // One synchronous look-communicate-move round.
    void step(Protocol& proto);

    // Verifies the agents' tether structure is complete and every tether is a
    // true visibility link; throws ProtocolViolation otherwise.
    void check_connectivity() const;

    json& trace() { return trace_; }
    const json& trace() const { return trace_; }

    struct Actions {
        std::optional<int> move_to_vertex;
        std::optional<Point> move_to_point;
        bool settle = false;
        int settle_parent = 0;
        int settle_orient = -1;
        std::optional<int> escort;
        bool halt = false;
    };

  private:
    std::shared_ptr<const SimplePolygon> poly_;
    Perception perception_;
    size_t start_vertex_;
    std::vector<AgentState> agents_;
    int round_ = 0;
    json trace_ = json::array();

    mutable std::map<size_t, VertexLimitedVisibilityPolygon> vlvp_cache_;
    mutable std::map<int, TerritoryInfo> territory_cache_;
    mutable std::map<std::array<double, 4>, bool> visible_cache_;

    void compute_territory(int agent_id) const;
};

// Read-only per-agent window for one round; heavyweight pieces on demand.
class View {
  public:
    View(const World& w, int self);
    Perception mode() const { return w_.perception(); }
    Point position() const { return self_.position; }
    int vertex() const { return self_.vertex; }
    const std::vector<int>& agents_here() const { return here_; }
    std::vector<int> visible_agents() const;

    // Coordinate-free boundary walk, clockwise from the orientation vertex:
    // vertex labels plus per-edge gap flags (proximity perception).
    std::pair<std::vector<int>, std::vector<bool>> sequence() const;

    // Full region with coordinates (depth perception).
    const VertexLimitedVisibilityPolygon& region() const;

    // Which of two objects is nearer (proximity perception comparator).
    ObjectRef closer(ObjectRef a, ObjectRef b) const;

  private:
    const World& w_;
    const AgentState& self_;
    std::vector<int> here_;
};

class Protocol {
  public:
    virtual ~Protocol() = default;
    virtual std::string name() const = 0;
    virtual void communicate(const World& w, const AgentState& self, const View& view,
                             std::vector<Message>& out) = 0;
    virtual void act(const World& w, const AgentState& self, const View& view,
                     const std::vector<Message>& inbox, World::Actions& actions) = 0;
    virtual bool done(const World& w) const = 0;
    virtual bool failed() const { return false; }
    virtual std::string failure() const { return ""; }
};

struct RunResult {
    bool success = false;
    std::string failure;
    GuardPlacement guards;
    TerritoryTree tree;
    int rounds = 0;
    int agents_used = 0;
    int guards_settled = 0;
    int medial_diameter = -1;
    std::shared_ptr<World> world;  // terminal state (reduction continues here)
    json trace_json = json::array();
    uint64_t trace_hash = 0;
};

RunResult run_bfs(std::shared_ptr<const SimplePolygon> P, int agent_budget,
                  size_t start_vertex = 0);
RunResult run_dfs(std::shared_ptr<const SimplePolygon> P, int agent_budget,
                  size_t start_vertex = 0);
RunResult run_race(std::shared_ptr<const SimplePolygon> P, int agent_budget,
                   size_t start_vertex = 0);
RunResult run_medial(std::shared_ptr<const SimplePolygon> P, int agent_budget,
                     size_t start_vertex = 0);

// Post-processing: gather the map at the root, recompute the triplet
// placement when it is smaller, route movers along the guard structure and
// retract the surplus; never more than floor(n/2)-1 guards afterwards.
struct ReduceResult {
    GuardPlacement guards;
    int extra_rounds = 0;
    bool redeployed = false;
};
ReduceResult reduce_guards(RunResult& run);

TerritoryTree build_territory_tree(const World& w);

uint64_t fnv1a(const std::string& s);

}  // namespace polyguard
