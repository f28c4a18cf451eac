#include "tdos/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "tdos/adversary.hpp"
#include "tdos/energy.hpp"
#include "tdos/errors.hpp"
#include "tdos/orchestrator.hpp"
#include "tdos/rng.hpp"

namespace tdos {

void EventQueue::schedule(QueuedEvent ev) {
    if (ev.time < now_)
        throw InternalScheduleError("event scheduled in the past: t=" + std::to_string(ev.time) +
                                    " < now=" + std::to_string(now_));
    ev.sequence = next_sequence_++;
    heap_.push(std::move(ev));
}

QueuedEvent EventQueue::next_event() {
    if (heap_.empty()) throw InternalScheduleError("next_event on empty queue");
    QueuedEvent ev = heap_.top();
    heap_.pop();
    now_ = ev.time;
    return ev;
}

namespace {

double interval_overlap(double a0, double a1, double b0, double b1) {
    const double lo = std::max(a0, b0);
    const double hi = std::min(a1, b1);
    return hi > lo ? hi - lo : 0.0;
}

struct NodeState {
    TacticalNode spec;
    BatteryState battery;
    double link_dist = 0.0;
    bool energy_depleted = false;
    bool recharge_pending = false;
    // per-window accumulators
    double traffic_term = 0.0; // sum over served requests of dist^gamma
    int window_spawns = 0;
    // run totals
    double total_draw = 0.0;
    double total_restored = 0.0;

    bool suspended() const { return battery.recharging || energy_depleted; }
};

struct InstState {
    InstanceRecord rec;
    int node_index = -1;
    // per-window accumulators
    double window_work = 0.0;
    long window_requests = 0;
    double window_traffic = 0.0;
    // last closed window snapshot
    double last_cpu_load = 0.0;
    long last_requests = 0;
};

struct CapState {
    CapabilitySpec spec;
    Lifecycle lifecycle = Lifecycle::Onboarding;
    std::vector<int> inst_ids;
    std::map<std::string, int> sticky; // client -> instance id
    std::vector<TelemetryWindow> telemetry;
    int dependents = 0;
    int rr_cursor = 0;
    // per-window accumulators
    std::set<std::string> clients;
    long requests = 0;
    long actions = 0;
    long dropped = 0;
    double sinkholed = 0.0;
    double cost_energy = 0.0;
    double cost_inst = 0.0;
    int window_spawn_count = 0;
};

class EngineImpl {
public:
    explicit EngineImpl(const ScenarioSpec& spec) : spec_(spec) {}

    SimTrace run();

private:
    const ScenarioSpec& spec_;
    SimTrace trace_;
    EventQueue queue_;
    std::vector<NodeState> nodes_;
    std::map<std::string, int> node_index_;
    std::map<std::string, CapState> caps_;
    std::vector<InstState> instances_; // index == instance id
    std::vector<double> last_node_load_;
    bool primary_available_ = true;
    std::uint64_t emit_seq_ = 0;
    double wl_ = 0.0;
    int window_count_ = 0;

    void emit(EventKind kind, double time, const std::string& capability = "",
              const std::string& node = "", const std::string& instance = "",
              double value = 0.0, const std::string& detail = "") {
        SimEvent e;
        e.time = time;
        e.sequence = emit_seq_++;
        e.kind = kind;
        e.capability = capability;
        e.node = node;
        e.instance = instance;
        e.value = value;
        e.detail = detail;
        trace_.events.push_back(std::move(e));
    }

    void bootstrap();
    void generate_mission();
    void schedule_boundaries_and_attacks();

    void on_arrival(const QueuedEvent& ev);
    void process_action(const MissionAction& action);
    void on_energy_tick(double t, int window);
    void on_window_close(double t, int window);
    void on_orchestrator_tick(double t, int window);
    void on_attack_start(const QueuedEvent& ev);
    void on_instance_spawn(const QueuedEvent& ev);
    void on_recharge_start(const QueuedEvent& ev);
    void on_recharge_end(const QueuedEvent& ev);

    int spawn_instance(double t, const std::string& capability_id, int node_index,
                       SpawnReason reason, const std::string& image_id, bool tainted,
                       bool under_poisoning);
    void schedule_pull(double t, CapState& cap, SpawnReason reason, const std::string& node_id,
                       bool under_poisoning);

    double wedos_multiplier(const std::string& capability, double t) const;
    double flash_surge(const std::string& capability, double t) const;
    double iedos_inflation(const std::string& capability, double ws, double we) const;

    int alive_count(const CapState& cap) const;
    std::set<int> hosting_nodes(const CapState& cap) const;
    int pick_serving_instance(CapState& cap, const std::string& client);
    void finalize();
};

double EngineImpl::wedos_multiplier(const std::string& capability, double t) const {
    double m = 1.0;
    for (const auto& a : spec_.attacks)
        if (a.kind == AttackKind::WEdos && !is_neutral(a) && a.target_capability == capability &&
            attack_active(a, t))
            m *= a.multiplier;
    return m;
}

double EngineImpl::flash_surge(const std::string& capability, double t) const {
    for (const auto& a : spec_.attacks)
        if (a.kind == AttackKind::FlashCrowd && !is_neutral(a) &&
            a.target_capability == capability && attack_active(a, t))
            return a.surge;
    return 1.0;
}

double EngineImpl::iedos_inflation(const std::string& capability, double ws, double we) const {
    double r = 0.0;
    for (const auto& a : spec_.attacks)
        if (a.kind == AttackKind::IEdos && !is_neutral(a) && a.target_capability == capability &&
            interval_overlap(a.t_start, a.t_end, ws, we) > 0.0)
            r += a.inflation;
    return r;
}

int EngineImpl::alive_count(const CapState& cap) const {
    int n = 0;
    for (int id : cap.inst_ids)
        if (instances_[static_cast<std::size_t>(id)].rec.alive_at_end) ++n;
    return n;
}

std::set<int> EngineImpl::hosting_nodes(const CapState& cap) const {
    std::set<int> nodes;
    for (int id : cap.inst_ids) {
        const auto& inst = instances_[static_cast<std::size_t>(id)];
        if (inst.rec.alive_at_end) nodes.insert(inst.node_index);
    }
    return nodes;
}

void EngineImpl::bootstrap() {
    int rr = 0;
    for (auto& [id, cap] : caps_) {
        cap.lifecycle = advance_lifecycle(cap.lifecycle, LifecycleEvent::OnboardComplete);
        emit(EventKind::LifecycleEvent, 0.0, id, "", "", 0.0, "Onboarding->Deployed");
        for (int i = 0; i < cap.spec.bootstrap_instances; ++i) {
            const int node = rr++ % static_cast<int>(nodes_.size());
            spawn_instance(0.0, id, node, SpawnReason::Bootstrap, "", false, false);
        }
    }
}

int EngineImpl::spawn_instance(double t, const std::string& capability_id, int node_index,
                               SpawnReason reason, const std::string& image_id, bool tainted,
                               bool under_poisoning) {
    InstState inst;
    inst.rec.id = static_cast<int>(instances_.size());
    inst.rec.capability_id = capability_id;
    inst.rec.host_node_id = nodes_[static_cast<std::size_t>(node_index)].spec.id;
    inst.rec.spawn_reason = reason;
    inst.rec.image_id = image_id;
    inst.rec.tainted = tainted;
    inst.rec.alive_at_end = true;
    inst.rec.spawned_under_poisoning = under_poisoning;
    inst.node_index = node_index;
    instances_.push_back(inst);

    auto& cap = caps_.at(capability_id);
    cap.inst_ids.push_back(inst.rec.id);
    cap.window_spawn_count += 1;
    nodes_[static_cast<std::size_t>(node_index)].window_spawns += 1;

    emit(EventKind::InstanceSpawn, t, capability_id, inst.rec.host_node_id,
         std::to_string(inst.rec.id), 0.0,
         std::string(to_string(reason)) + (image_id.empty() ? "" : " image=" + image_id) +
             (tainted ? " tainted" : ""));
    return inst.rec.id;
}

void EngineImpl::generate_mission() {
    Rng rng = Rng::stream(spec_.seed, "mission");
    int gi = 0;
    for (const auto& g : spec_.mission_generators) {
        const double t0 = std::max(0.0, g.t_start);
        const double t1 = g.t_end < 0.0 ? spec_.duration : std::min(spec_.duration, g.t_end);
        for (int w = 0; w < window_count_; ++w) {
            const double ws = w * wl_;
            const double we = ws + wl_;
            const double lo = std::max(ws, t0);
            const double hi = std::min(we, t1);
            if (hi <= lo) continue;
            const int count = rng.next_poisson(g.rate * (hi - lo));
            for (int k = 0; k < count; ++k) {
                MissionAction a;
                a.action_id = "g" + std::to_string(gi) + "_w" + std::to_string(w) + "_k" +
                              std::to_string(k);
                a.time = lo + rng.next_double() * (hi - lo);
                a.required_capability = g.capability_id;
                a.client_id = "g" + std::to_string(gi) + "_c" +
                              std::to_string(rng.next_below(static_cast<std::uint64_t>(g.client_pool)));
                a.request_count = g.request_count;
                a.work_per_request = g.work_per_request;
                QueuedEvent ev;
                ev.time = a.time;
                ev.kind = EventKind::ActionArrival;
                ev.action = a;
                queue_.schedule(std::move(ev));
            }
        }
        ++gi;
    }
    for (const auto& a : spec_.fixed_actions) {
        QueuedEvent ev;
        ev.time = a.time;
        ev.kind = EventKind::ActionArrival;
        ev.action = a;
        queue_.schedule(std::move(ev));
    }
}

void EngineImpl::schedule_boundaries_and_attacks() {
    for (int w = 0; w < window_count_; ++w) {
        const double t = (w + 1) * wl_;
        for (EventKind k :
             {EventKind::EnergyTick, EventKind::WindowClose, EventKind::OrchestratorTick}) {
            QueuedEvent ev;
            ev.time = t;
            ev.kind = k;
            ev.node_index = w; // boundary events carry the window index here
            queue_.schedule(std::move(ev));
        }
    }
    int ai = 0;
    for (const auto& a : spec_.attacks) {
        if (!is_neutral(a)) {
            QueuedEvent s;
            s.time = a.t_start;
            s.kind = EventKind::AttackStart;
            s.attack_index = ai;
            queue_.schedule(std::move(s));
            QueuedEvent e;
            e.time = a.t_end;
            e.kind = EventKind::AttackEnd;
            e.attack_index = ai;
            queue_.schedule(std::move(e));
        }
        ++ai;
    }
}

int EngineImpl::pick_serving_instance(CapState& cap, const std::string& client) {
    auto usable = [&](int id) {
        const auto& inst = instances_[static_cast<std::size_t>(id)];
        return inst.rec.alive_at_end && !nodes_[static_cast<std::size_t>(inst.node_index)].suspended();
    };

    auto it = cap.sticky.find(client);
    if (it != cap.sticky.end() && usable(it->second)) return it->second;

    // New or displaced client: pick the usable instance with the fewest
    // sticky assignments, ties by lowest id.
    std::map<int, int> assigned;
    for (const auto& [c, id] : cap.sticky) ++assigned[id];
    int best = -1;
    int best_load = 0;
    for (int id : cap.inst_ids) {
        if (!usable(id)) continue;
        const int load = assigned.count(id) ? assigned[id] : 0;
        if (best < 0 || load < best_load) {
            best = id;
            best_load = load;
        }
    }
    if (best >= 0) cap.sticky[client] = best;
    return best;
}

void EngineImpl::process_action(const MissionAction& action) {
    auto& cap = caps_.at(action.required_capability);
    cap.actions += 1;
    cap.clients.insert(action.client_id);
    cap.requests += action.request_count;

    const int inst_id = pick_serving_instance(cap, action.client_id);
    if (inst_id < 0) {
        cap.dropped += action.request_count;
        emit(EventKind::ActionArrival, queue_.now(), action.required_capability, "", "",
             static_cast<double>(action.request_count), action.client_id + " dropped");
        return;
    }

    auto& inst = instances_[static_cast<std::size_t>(inst_id)];
    auto& node = nodes_[static_cast<std::size_t>(inst.node_index)];
    const double work = static_cast<double>(action.request_count) *
                        apply_wedos(action.work_per_request,
                                    wedos_multiplier(action.required_capability, action.time));
    inst.window_work += work;
    inst.window_requests += action.request_count;
    const double traffic = static_cast<double>(action.request_count) *
                           std::pow(node.link_dist, spec_.power.gamma);
    inst.window_traffic += traffic;
    node.traffic_term += traffic;

    emit(EventKind::ActionArrival, queue_.now(), action.required_capability, node.spec.id,
         std::to_string(inst_id), static_cast<double>(action.request_count), action.client_id);
}

void EngineImpl::on_arrival(const QueuedEvent& ev) {
    const double s = flash_surge(ev.action.required_capability, ev.action.time);
    for (const auto& a : apply_flash_crowd(ev.action, s)) process_action(a);
}

void EngineImpl::on_energy_tick(double t, int window) {
    const double ws = window * wl_;
    const double we = ws + wl_;

    // Decoy demand is synthetic load served during the window; account it
    // before computing the draw so it burns energy like any other work.
    for (const auto& a : spec_.attacks) {
        if (a.kind != AttackKind::DecoyField || is_neutral(a)) continue;
        const double ov = interval_overlap(a.t_start, a.t_end, ws, we);
        if (ov <= 0.0) continue;
        auto& cap = caps_.at(a.target_capability);
        const double q = decoy_sinkholed_requests(a.decoy_count, a.decoy_request_rate, ov);
        std::vector<int> targets;
        for (int id : cap.inst_ids) {
            const auto& inst = instances_[static_cast<std::size_t>(id)];
            if (inst.rec.alive_at_end && !nodes_[static_cast<std::size_t>(inst.node_index)].suspended())
                targets.push_back(id);
        }
        if (targets.empty()) continue;
        cap.sinkholed += q;
        const double share = q * a.decoy_work_per_request / static_cast<double>(targets.size());
        for (int id : targets) instances_[static_cast<std::size_t>(id)].window_work += share;
    }

    for (std::size_t ni = 0; ni < nodes_.size(); ++ni) {
        auto& node = nodes_[ni];
        if (node.battery.recharging) {
            node.traffic_term = 0.0;
            node.window_spawns = 0;
            continue;
        }

        // Denial-of-sleep inflates idle power over the attacked fraction
        // of the window.
        double idle_seconds = wl_;
        for (const auto& a : spec_.attacks) {
            if (a.kind != AttackKind::DenialOfSleep || is_neutral(a)) continue;
            const bool targeted = std::find(a.target_nodes.begin(), a.target_nodes.end(),
                                            node.spec.id) != a.target_nodes.end();
            if (!targeted) continue;
            idle_seconds += (a.idle_factor - 1.0) * interval_overlap(a.t_start, a.t_end, ws, we);
        }

        int live = 0;
        double work_sum = 0.0;
        std::map<std::string, double> cap_energy; // attribution
        for (const auto& inst : instances_) {
            if (!inst.rec.alive_at_end || inst.node_index != static_cast<int>(ni)) continue;
            if (node.energy_depleted) continue; // suspended instances draw nothing
            ++live;
            work_sum += inst.window_work;
            cap_energy[inst.rec.capability_id] +=
                spec_.power.alpha * inst.window_work + spec_.power.beta * inst.window_traffic;
        }
        const double idle_energy = spec_.power.p_idle * idle_seconds * live;
        if (live > 0) {
            // idle shared equally across this node's live instances
            std::map<std::string, int> cap_count;
            for (const auto& inst : instances_)
                if (inst.rec.alive_at_end && inst.node_index == static_cast<int>(ni))
                    ++cap_count[inst.rec.capability_id];
            for (const auto& [cid, n] : cap_count)
                cap_energy[cid] += idle_energy * static_cast<double>(n) / static_cast<double>(live);
        }

        const double spawn_energy = spec_.power.c_inst * node.window_spawns;
        const double demand = idle_energy + spec_.power.alpha * work_sum +
                              spec_.power.beta * node.traffic_term + spawn_energy;

        bool needs = false;
        const double drawn = apply_draw(node.battery, demand, &needs);
        node.total_draw += drawn;
        node.energy_depleted = node.battery.soc <= 0.0 && !node.battery.recharging;
        emit(EventKind::EnergyTick, t, "", node.spec.id, "", drawn,
             "demand=" + std::to_string(demand));

        for (const auto& [cid, e] : cap_energy) caps_.at(cid).cost_energy += e;

        if (needs && !node.recharge_pending) {
            node.recharge_pending = true;
            QueuedEvent ev;
            ev.time = t;
            ev.kind = EventKind::RechargeStart;
            ev.node_index = static_cast<int>(ni);
            queue_.schedule(std::move(ev));
        }

        node.traffic_term = 0.0;
        node.window_spawns = 0;
    }

    // Instantiation energy attributed to the owning capability.
    for (auto& [cid, cap] : caps_) {
        cap.cost_inst += spec_.power.c_inst * cap.window_spawn_count;
        cap.window_spawn_count = 0;
    }
}

void EngineImpl::on_window_close(double t, int window) {
    // Node loads and IR for the closing window.
    std::vector<double> node_load(nodes_.size(), 0.0);
    for (const auto& inst : instances_)
        if (inst.rec.alive_at_end &&
            !nodes_[static_cast<std::size_t>(inst.node_index)].suspended())
            node_load[static_cast<std::size_t>(inst.node_index)] += inst.window_work / wl_;

    for (std::size_t ni = 0; ni < nodes_.size(); ++ni)
        trace_.ir_series[nodes_[ni].spec.id].push_back(ir_proxy(spec_.ir, node_load[ni]));
    last_node_load_ = node_load;

    for (auto& [cid, cap] : caps_) {
        CrownWindow w;
        w.window_index = window;
        w.capability = cid;
        w.clients = static_cast<long>(cap.clients.size());
        w.requests = cap.requests;
        w.actions = cap.actions;
        w.dependents = cap.dependents;
        w.dropped = cap.dropped;
        w.sinkholed = cap.sinkholed;
        w.cost = cap.cost_energy + cap.cost_inst;
        w.energy_draw = cap.cost_energy;

        int live = 0, tainted = 0;
        std::set<int> hosts;
        double workload = 0.0;
        double ir_max = 0.0;
        for (int id : cap.inst_ids) {
            auto& inst = instances_[static_cast<std::size_t>(id)];
            if (!inst.rec.alive_at_end) continue;
            ++live;
            if (inst.rec.tainted) ++tainted;
            hosts.insert(inst.node_index);
            workload += inst.window_work;
            ir_max = std::max(ir_max,
                              trace_.ir_series.at(inst.rec.host_node_id).back());
        }
        w.live_instances = live;
        w.supplier_nodes = static_cast<int>(hosts.size());
        w.workload = workload;
        w.ir_max = ir_max;
        w.forged_fraction = live > 0 ? static_cast<double>(tainted) / live : 0.0;
        trace_.windows.push_back(std::move(w));

        // Snapshot and reset instance accumulators.
        for (int id : cap.inst_ids) {
            auto& inst = instances_[static_cast<std::size_t>(id)];
            if (!inst.rec.alive_at_end) continue;
            inst.last_cpu_load = inst.window_work / wl_;
            inst.last_requests = inst.window_requests;
            inst.rec.total_work += inst.window_work;
            inst.rec.total_requests += inst.window_requests;
            inst.rec.windows_alive += 1;
            inst.window_work = 0.0;
            inst.window_requests = 0;
            inst.window_traffic = 0.0;
        }
        cap.clients.clear();
        cap.requests = 0;
        cap.actions = 0;
        cap.dropped = 0;
        cap.sinkholed = 0.0;
        cap.cost_energy = 0.0;
        cap.cost_inst = 0.0;
    }
    emit(EventKind::WindowClose, t, "", "", "", static_cast<double>(window), "");
}

void EngineImpl::schedule_pull(double t, CapState& cap, SpawnReason reason,
                               const std::string& node_id, bool under_poisoning) {
    std::string image_id;
    bool tainted = false;
    double delay = 0.0;
    bool has_images = false;
    for (const auto& img : spec_.marketplace)
        if (img.capability_id == cap.spec.id) has_images = true;
    if (has_images) {
        const MarketplaceImage& img = pull_image(cap.spec.id, spec_.marketplace, primary_available_);
        image_id = img.image_id;
        tainted = img.tainted;
        delay = img.provisioning_delay;
    }
    const double when = t + delay;
    if (when > spec_.duration) return; // never process events past the horizon

    QueuedEvent ev;
    ev.time = when;
    ev.kind = EventKind::InstanceSpawn;
    ev.capability = cap.spec.id;
    ev.node_index = node_index_.at(node_id);
    ev.spawn_reason = reason;
    ev.image_id = image_id;
    ev.tainted = tainted;
    ev.spawned_under_poisoning = under_poisoning;
    queue_.schedule(std::move(ev));
}

void EngineImpl::on_orchestrator_tick(double t, int window) {
    const double ws = window * wl_;
    const double we = ws + wl_;

    for (auto& [cid, cap] : caps_) {
        if (cap.lifecycle == Lifecycle::Undeployed) continue;

        // Decoy coverage expansion (role-inverted scenarios): keep enough
        // nodes covered to serve the synthetic endpoints.
        for (const auto& a : spec_.attacks) {
            if (a.kind != AttackKind::DecoyField || is_neutral(a) || a.target_capability != cid)
                continue;
            if (!attack_active(a, t)) continue;
            const int required = decoy_required_coverage(a.decoy_count, a.decoys_per_instance);
            auto covered = hosting_nodes(cap);
            for (std::size_t ni = 0;
                 ni < nodes_.size() && static_cast<int>(covered.size()) < required &&
                 alive_count(cap) + 0 < spec_.policy.max_instances;
                 ++ni) {
                if (covered.count(static_cast<int>(ni)) || nodes_[ni].suspended()) continue;
                schedule_pull(t, cap, SpawnReason::MarketplacePull, nodes_[ni].spec.id, false);
                covered.insert(static_cast<int>(ni)); // pending spawn counts as covered
            }
        }

        // Telemetry for the just-closed window; decisions read reports,
        // never ground truth.
        const double inflation =
            spec_.policy.sanitized_telemetry ? 0.0 : iedos_inflation(cid, ws, we);
        TelemetryWindow tw;
        tw.window_index = window;
        for (int id : cap.inst_ids) {
            const auto& inst = instances_[static_cast<std::size_t>(id)];
            if (!inst.rec.alive_at_end) continue;
            TelemetryReport r;
            r.instance_id = id;
            r.window_index = window;
            r.reported_cpu = inflation > 0.0 ? apply_iedos(inst.last_cpu_load, inflation)
                                             : inst.last_cpu_load;
            r.reported_requests = inst.last_requests;
            r.poisoned = inflation > 0.0;
            tw.reports.push_back(r);
        }
        cap.telemetry.push_back(tw);

        const ScaleDecision d = autoscale_step(cap.telemetry, alive_count(cap), spec_.policy);
        std::string detail = d.action == ScaleAction::Out  ? "Out(1)"
                             : d.action == ScaleAction::In ? "In(1)"
                                                           : "Hold";
        if (inflation > 0.0) detail += " poisoned";

        if (d.action == ScaleAction::Out) {
            std::vector<int> node_live(nodes_.size(), 0);
            for (const auto& inst : instances_)
                if (inst.rec.alive_at_end) ++node_live[static_cast<std::size_t>(inst.node_index)];
            std::vector<PlacementCandidate> candidates;
            for (std::size_t ni = 0; ni < nodes_.size(); ++ni)
                candidates.push_back({nodes_[ni].spec.id, last_node_load_[ni], node_live[ni],
                                      nodes_[ni].battery.recharging});
            try {
                const std::string node_id =
                    place_instance(candidates, spec_.policy.placement, &cap.rr_cursor);
                schedule_pull(t, cap, SpawnReason::AutoscaleOut, node_id, inflation > 0.0);
            } catch (const NoEligibleNode&) {
                detail += " blocked:NoEligibleNode";
            }
        } else if (d.action == ScaleAction::In) {
            // Lowest productivity first: the lazy-VNF mitigation path.
            int victim = -1;
            double victim_prod = 0.0;
            for (int id : cap.inst_ids) {
                const auto& inst = instances_[static_cast<std::size_t>(id)];
                if (!inst.rec.alive_at_end) continue;
                const double mean_load =
                    inst.rec.windows_alive > 0
                        ? inst.rec.total_work / (inst.rec.windows_alive * wl_)
                        : 0.0;
                const double prod = static_cast<double>(inst.rec.total_requests) /
                                    std::max(mean_load, 1e-9);
                if (victim < 0 || prod < victim_prod || (prod == victim_prod && id > victim)) {
                    victim = id;
                    victim_prod = prod;
                }
            }
            if (victim >= 0) {
                auto& inst = instances_[static_cast<std::size_t>(victim)];
                inst.rec.alive_at_end = false;
                emit(EventKind::InstanceKill, t, cid, inst.rec.host_node_id,
                     std::to_string(victim), 0.0, "scale-in");
            }
        }
        emit(EventKind::OrchestratorTick, t, cid, "", "", d.mean_reported_cpu, detail);
    }
}

void EngineImpl::on_attack_start(const QueuedEvent& ev) {
    const auto& a = spec_.attacks[static_cast<std::size_t>(ev.attack_index)];
    if (a.kind == AttackKind::SupplyChainTaint) {
        bool has_secondary = false;
        for (const auto& img : spec_.marketplace)
            if (img.capability_id == a.target_capability && img.secondary_cluster)
                has_secondary = true;
        if (!has_secondary)
            throw NoSecondaryCluster("supply-chain taint on '" + a.target_capability +
                                     "' but the marketplace has no secondary cluster");
        primary_available_ = false;
    }
    emit(EventKind::AttackStart, ev.time, a.target_capability, "", "", 0.0, to_string(a.kind));
}

void EngineImpl::on_instance_spawn(const QueuedEvent& ev) {
    auto& cap = caps_.at(ev.capability);
    if (alive_count(cap) >= spec_.policy.max_instances) return; // raced past the cap
    spawn_instance(ev.time, ev.capability, ev.node_index, ev.spawn_reason, ev.image_id,
                   ev.tainted, ev.spawned_under_poisoning);
}

void EngineImpl::on_recharge_start(const QueuedEvent& ev) {
    auto& node = nodes_[static_cast<std::size_t>(ev.node_index)];
    node.battery.recharging = true;
    node.recharge_pending = false;
    node.energy_depleted = false;
    emit(EventKind::RechargeStart, ev.time, "", node.spec.id, "", node.battery.soc, "");
    const double when = ev.time + node.battery.recharge_duration;
    if (when <= spec_.duration) {
        QueuedEvent end;
        end.time = when;
        end.kind = EventKind::RechargeEnd;
        end.node_index = ev.node_index;
        queue_.schedule(std::move(end));
    }
}

void EngineImpl::on_recharge_end(const QueuedEvent& ev) {
    auto& node = nodes_[static_cast<std::size_t>(ev.node_index)];
    const double restored = finish_recharge(node.battery);
    node.total_restored += restored;
    emit(EventKind::RechargeEnd, ev.time, "", node.spec.id, "", restored, "");
}

void EngineImpl::finalize() {
    for (const auto& node : nodes_) {
        NodeEnergySummary s;
        s.node = node.spec.id;
        s.total_draw = node.total_draw;
        s.recharge_count = node.battery.recharge_count;
        s.final_soc = node.battery.soc;
        s.capacity = node.battery.capacity;
        s.restored = node.total_restored;
        trace_.energy.push_back(std::move(s));
    }
    for (const auto& inst : instances_) trace_.instances.push_back(inst.rec);
}

SimTrace EngineImpl::run() {
    validate(spec_);
    wl_ = spec_.window_length;
    window_count_ = static_cast<int>(std::llround(spec_.duration / wl_));

    trace_.seed = spec_.seed;
    trace_.scenario_digest = scenario_digest(spec_);
    trace_.duration = spec_.duration;
    trace_.window_length = wl_;
    trace_.window_count = window_count_;

    DependencyGraph graph = DependencyGraph::build(spec_.capabilities);
    for (std::size_t i = 0; i < spec_.nodes.size(); ++i) {
        NodeState n;
        n.spec = spec_.nodes[i];
        n.battery.capacity = n.spec.battery_capacity;
        n.battery.soc = n.spec.battery_capacity;
        n.battery.recharge_threshold = n.spec.recharge_threshold;
        n.battery.recharge_duration = n.spec.recharge_duration;
        nodes_.push_back(std::move(n));
        node_index_[spec_.nodes[i].id] = static_cast<int>(i);
    }
    for (auto& node : nodes_) node.link_dist = link_distance(node.spec, spec_.nodes);
    last_node_load_.assign(nodes_.size(), 0.0);

    for (const auto& c : spec_.capabilities) {
        CapState cs;
        cs.spec = c;
        cs.dependents = graph.in_degree(c.id);
        caps_.emplace(c.id, std::move(cs));
    }

    bootstrap();
    schedule_boundaries_and_attacks();
    generate_mission();

    while (!queue_.empty()) {
        const QueuedEvent ev = queue_.next_event();
        switch (ev.kind) {
            case EventKind::ActionArrival: on_arrival(ev); break;
            case EventKind::EnergyTick: on_energy_tick(ev.time, ev.node_index); break;
            case EventKind::WindowClose: on_window_close(ev.time, ev.node_index); break;
            case EventKind::OrchestratorTick: on_orchestrator_tick(ev.time, ev.node_index); break;
            case EventKind::AttackStart: on_attack_start(ev); break;
            case EventKind::AttackEnd: {
                const auto& a = spec_.attacks[static_cast<std::size_t>(ev.attack_index)];
                if (a.kind == AttackKind::SupplyChainTaint) {
                    // restore the primary registry unless another taint is
                    // still active
                    bool still_tainted = false;
                    for (const auto& other : spec_.attacks)
                        if (other.kind == AttackKind::SupplyChainTaint && !is_neutral(other) &&
                            attack_active(other, ev.time))
                            still_tainted = true;
                    if (!still_tainted) primary_available_ = true;
                }
                emit(EventKind::AttackEnd, ev.time, a.target_capability, "", "", 0.0,
                     to_string(a.kind));
                break;
            }
            case EventKind::InstanceSpawn: on_instance_spawn(ev); break;
            case EventKind::RechargeStart: on_recharge_start(ev); break;
            case EventKind::RechargeEnd: on_recharge_end(ev); break;
            default: break;
        }
    }

    finalize();
    return std::move(trace_);
}

} // namespace

SimTrace run(const ScenarioSpec& scenario) { return EngineImpl(scenario).run(); }

} // namespace tdos
