#include "niouc/sim/tandem.hpp"

#include <cstdint>
#include <deque>
#include <queue>
#include <stdexcept>

namespace niouc::sim {

std::vector<std::array<int, 3>> enumerate_solutions(const TandemQueueParams& params) {
    std::vector<std::array<int, 3>> out;
    const int cap = params.max_extra_per_station;
    for (int x1 = 0; x1 <= cap; ++x1)
        for (int x2 = 0; x2 <= cap; ++x2)
            for (int x3 = 0; x3 <= cap; ++x3) {
                const int cost = params.capacity_cost[0] * x1 + params.capacity_cost[1] * x2 +
                                 params.capacity_cost[2] * x3;
                if (cost <= params.budget) out.push_back({x1, x2, x3});
            }
    return out;
}

namespace {

struct Event {
    double time;
    std::uint64_t seq;
    int kind;    // 0 = arrival, 1 = service finish
    int payload; // customer for arrivals, station for finishes

    bool operator>(const Event& other) const {
        if (time != other.time) return time > other.time;
        return seq > other.seq;
    }
};

class TandemSim {
public:
    TandemSim(const TandemQueueParams& params, const std::array<int, 3>& extra,
              std::span<const double> gaps, const std::array<std::span<const double>, 3>& service)
        : params_(params), gaps_(gaps), service_(service) {
        for (int s = 0; s < 3; ++s) capacity_[s] = params.base_capacity[s] + extra[s];
        n_ = params.customers;
        wait_.assign(n_, 0.0);
        depart_.assign(n_, 0.0);
    }

    double run() {
        double t = 0.0;
        for (int j = 0; j < n_; ++j) {
            t += gaps_[j];
            push(t, 0, j);
        }
        while (!events_.empty()) {
            const Event ev = events_.top();
            events_.pop();
            if (ev.kind == 0)
                enter(0, ev.payload, ev.time);
            else
                on_finish(ev.payload, ev.time);
        }
        double total = 0.0;
        for (double w : wait_) total += w;
        return total / n_;
    }

    const std::vector<double>& departures() const { return depart_; }

private:
    double duration(int s, int j) const { return service_[s][j] / capacity_[s]; }

    bool room_at(int s) const {
        if (occupant_[s] < 0) return true;
        const int buf = params_.buffer_capacity[s];
        return buf < 0 || static_cast<int>(queue_[s].size()) < buf;
    }

    void push(double time, int kind, int payload) { events_.push({time, seq_++, kind, payload}); }

    void start_service(int s, int j, double t) {
        occupant_[s] = j;
        push(t + duration(s, j), 1, s);
    }

    void enter(int s, int j, double t) {
        if (occupant_[s] < 0)
            start_service(s, j, t);
        else
            queue_[s].push_back({j, t});
    }

    // Server at s becomes free: pull the next customer, then see whether the
    // freed position lets a blocked upstream customer advance. Cascades
    // strictly upstream, so recursion is bounded by the station count.
    void release_and_pull(int s, double t) {
        occupant_[s] = -1;
        if (!queue_[s].empty()) {
            const auto [j2, tq] = queue_[s].front();
            queue_[s].pop_front();
            wait_[j2] += t - tq;
            start_service(s, j2, t);
        }
        try_unblock_into(s, t);
    }

    void try_unblock_into(int s, double t) {
        if (s == 0) return;
        const int up = s - 1;
        if (!blocked_[up] || !room_at(s)) return;
        const int j = occupant_[up];
        blocked_[up] = false;
        wait_[j] += t - blocked_since_[up];
        enter(s, j, t);
        release_and_pull(up, t);
    }

    void on_finish(int s, double t) {
        const int j = occupant_[s];
        if (s == 2) {
            depart_[j] = t;
            release_and_pull(s, t);
        } else if (room_at(s + 1)) {
            enter(s + 1, j, t);
            release_and_pull(s, t);
        } else {
            blocked_[s] = true;
            blocked_since_[s] = t;
        }
    }

    const TandemQueueParams& params_;
    std::span<const double> gaps_;
    const std::array<std::span<const double>, 3>& service_;
    std::array<int, 3> capacity_{};
    int n_ = 0;

    std::priority_queue<Event, std::vector<Event>, std::greater<Event>> events_;
    std::uint64_t seq_ = 0;
    std::array<int, 3> occupant_{-1, -1, -1};
    std::array<bool, 3> blocked_{false, false, false};
    std::array<double, 3> blocked_since_{};
    std::array<std::deque<std::pair<int, double>>, 3> queue_;
    std::vector<double> wait_;
    std::vector<double> depart_;
};

void validate_inputs(const TandemQueueParams& params, const std::array<int, 3>& extra,
                     std::span<const double> gaps, const std::array<std::span<const double>, 3>& service) {
    int cost = 0;
    for (int s = 0; s < 3; ++s) {
        if (extra[s] < 0 || extra[s] > params.max_extra_per_station)
            throw std::invalid_argument("tandem_queue_output: infeasible capacity vector");
        cost += params.capacity_cost[s] * extra[s];
    }
    if (cost > params.budget) throw std::invalid_argument("tandem_queue_output: capacity vector exceeds budget");
    const std::size_t n = static_cast<std::size_t>(params.customers);
    if (gaps.size() != n) throw std::invalid_argument("tandem_queue_output: need one interarrival gap per customer");
    for (double g : gaps)
        if (g < 0.0) throw std::invalid_argument("tandem_queue_output: negative interarrival gap");
    for (int s = 0; s < 3; ++s) {
        if (service[s].size() != n)
            throw std::invalid_argument("tandem_queue_output: need one service time per customer per station");
        for (double v : service[s])
            if (v < 0.0) throw std::invalid_argument("tandem_queue_output: negative service time");
    }
}

} // namespace

double tandem_queue_output(const TandemQueueParams& params, const std::array<int, 3>& extra_capacity,
                           std::span<const double> arrival_gaps,
                           const std::array<std::span<const double>, 3>& service) {
    validate_inputs(params, extra_capacity, arrival_gaps, service);
    TandemSim sim(params, extra_capacity, arrival_gaps, service);
    return sim.run();
}

double sample_service_time(const TandemQueueParams& params, int station, stats::RngStream& rng) {
    if (station < 0 || station > 2) throw std::invalid_argument("sample_service_time: station out of range");
    if (params.scenario == TandemQueueParams::Scenario::exponential)
        return rng.next_exponential(1.0 / params.service_mean[station]);
    const auto& b = params.bimodal[station];
    const bool first = rng.next_uniform() < params.bimodal_mix[station];
    if (first) return b[0] * rng.next_beta(b[1], b[2]);
    return b[3] * rng.next_beta(b[4], b[5]);
}

TandemQueueModel::TandemQueueModel(TandemQueueParams params)
    : params_(params), solutions_(enumerate_solutions(params)) {
    if (solutions_.empty()) throw std::invalid_argument("TandemQueueModel: no feasible solutions");
    if (params_.customers < 1) throw std::invalid_argument("TandemQueueModel: need at least one customer");
}

void TandemQueueModel::generate_aux(stats::RngStream& rng, std::span<double> out) const {
    for (double& g : out) g = rng.next_exponential(params_.arrival_rate);
}

double TandemQueueModel::evaluate(int solution, const std::vector<std::vector<double>>& inputs,
                                  std::span<const double> aux) const {
    const std::array<std::span<const double>, 3> service{
        std::span<const double>(inputs[0]), std::span<const double>(inputs[1]),
        std::span<const double>(inputs[2])};
    return -tandem_queue_output(params_, solutions_[solution], aux, service);
}

} // namespace niouc::sim
