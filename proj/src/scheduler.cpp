// Copyright 2026 The Quingo Toolchain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "quingo/scheduler.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "quingo/error.hpp"

namespace quingo {

using namespace ir;

bool is_quantum(const Instr& in) { return in.kind == InstrKind::Call && in.opaque; }

int64_t classical_cost(const Instr& in) {
  switch (in.kind) {
    case InstrKind::Assign: {
      const ExprP& v = in.value;
      if (v->op == Op::Unary) return v->name == "!" ? 2 : 1;
      if (v->op == Op::Binary) {
        const std::string& o = v->name;
        bool cmp = o == "==" || o == "!=" || o == "<" || o == "<=" || o == ">" || o == ">=";
        return cmp ? 2 : 1;
      }
      return 1;  // ldi or register copy
    }
    case InstrKind::Call: return in.opaque && !in.dst.empty() ? 1 : 0;  // fmr
    default: return 0;
  }
}

int64_t edge_cost(const Terminator& t, int which) {
  switch (t.kind) {
    case TermKind::Jump: return 1;
    case TermKind::Branch: return which == 0 ? 2 : 3;  // cmp, br [, jmp]
    default: return 0;
  }
}

int64_t busy_cost(const Instr& in, const PlatformConfig& cfg) {
  if (is_quantum(in)) return cfg.at(in.callee).duration_ns + classical_cost(in);
  return classical_cost(in);
}

namespace {

std::string timer_of(const ExprP& e) {
  if (!e || e->op != Op::Const || !e->value.is<TimerVal>())
    throw Error(Errc::DynamicUnsupported, "timing constraint names a timer that is not resolved at compile time");
  return e->value.as<TimerVal>().id;
}

int64_t time_of(const ExprP& e) {
  if (!e || e->op != Op::Const || !e->value.is<TimeVal>())
    throw Error(Errc::DynamicUnsupported, "timing constraint time is not a compile-time constant");
  return e->value.as<TimeVal>().ns;
}

const char* cmp_text(ast::Cmp c) {
  switch (c) {
    case ast::Cmp::Eq: return "==";
    case ast::Cmp::Gt: return ">";
    default: return ">=";
  }
}

std::string short_timer(const std::string& id) {
  auto dot = id.rfind('.');
  auto hash = id.rfind('#');
  if (dot == std::string::npos || hash == std::string::npos || hash < dot) return id;
  return id.substr(dot + 1, hash - dot - 1);
}

std::string op_text(const Instr& in) {
  std::string s = in.callee + "(";
  for (size_t i = 0; i < in.args.size(); ++i) {
    if (i) s += ", ";
    s += expr_to_string(in.args[i]);
  }
  return s + ")";
}

std::string constraint_text(const TimingConstraint& c) {
  return short_timer(timer_of(c.timer)) + " " + cmp_text(c.cmp) + " " + std::to_string(time_of(c.time)) + "ns";
}

std::vector<int> qubits_of(const Instr& in) {
  std::vector<int> qs;
  for (const auto* list : {&in.controls, &in.args})
    for (const auto& a : *list)
      if (a->op == Op::Const && a->value.is<QubitVal>()) qs.push_back(a->value.as<QubitVal>().index);
  return qs;
}

// Difference constraints t[to] >= t[from] + w over the quantum operations
// of one block. Node 0 is the block entry, fixed at cycle 0.
struct Graph {
  struct Edge {
    int from, to;
    int64_t w;
    std::string label;  // empty for issue-order edges
  };
  int nodes = 1;
  std::vector<Edge> edges;

  int add_node() { return nodes++; }
  void add(int from, int to, int64_t w, std::string label = {}) { edges.push_back({from, to, w, std::move(label)}); }
};

[[noreturn]] void infeasible(const Graph& g, const std::vector<int>& via, int start) {
  // Walk predecessor edges back from `start`. If the walk closes a cycle,
  // only the cycle is reported; otherwise (an op pushed before block entry)
  // the whole chain is.
  std::vector<int> path;
  std::vector<int> nodes{start};
  int n = start;
  while (via[n] >= 0) {
    path.push_back(via[n]);
    n = g.edges[via[n]].from;
    auto hit = std::find(nodes.begin(), nodes.end(), n);
    if (hit != nodes.end()) {
      path.erase(path.begin(), path.begin() + (hit - nodes.begin()));
      break;
    }
    nodes.push_back(n);
  }
  std::vector<std::string> labels;
  bool order = false;
  for (int i : path) {
    const auto& e = g.edges[i];
    if (e.label.empty()) {
      order = true;
    } else if (std::find(labels.begin(), labels.end(), e.label) == labels.end()) {
      labels.push_back(e.label);
    }
  }
  std::reverse(labels.begin(), labels.end());
  std::string msg = "timing constraints cannot be met: ";
  for (size_t i = 0; i < labels.size(); ++i) msg += (i ? " conflicts with " : "") + labels[i];
  if (order) msg += labels.empty() ? "issue order" : " given the issue order of the preceding operations";
  if (labels.empty() && !order) msg += "an operation would have to start before its block";
  throw Error(Errc::Infeasible, msg);
}

// Longest paths from node 0; throws Infeasible on a positive cycle.
std::vector<int64_t> solve(const Graph& g) {
  std::vector<int64_t> t(static_cast<size_t>(g.nodes), 0);
  std::vector<int> via(static_cast<size_t>(g.nodes), -1);
  for (int pass = 0;; ++pass) {
    bool changed = false;
    int last = -1;
    for (size_t i = 0; i < g.edges.size(); ++i) {
      const auto& e = g.edges[i];
      if (t[e.from] + e.w > t[e.to]) {
        t[e.to] = t[e.from] + e.w;
        via[e.to] = static_cast<int>(i);
        changed = true;
        last = e.to;
        if (e.to == 0) infeasible(g, via, 0);
      }
    }
    if (!changed) return t;
    if (pass > g.nodes) infeasible(g, via, last);
  }
}

struct Anchor {
  int node = 0;
  int64_t offset = 0;
};

struct Scheduler {
  const Proc& p;
  const PlatformConfig& cfg;
  std::vector<std::set<std::string>> live_in;

  Scheduler(const Proc& proc, const PlatformConfig& c) : p(proc), cfg(c) {}

  // Timers read before being reset.
  void timer_liveness() {
    size_t n = p.blocks.size();
    std::vector<std::set<std::string>> use(n), kill(n);
    for (size_t b = 0; b < n; ++b) {
      for (const Instr& in : p.blocks[b].instrs) {
        if (in.kind == InstrKind::TimerReset) {
          for (const auto& a : in.args) kill[b].insert(timer_of(a));
        } else if (is_quantum(in)) {
          for (const auto& c : in.timing.constraints) {
            std::string t = timer_of(c.timer);
            if (!kill[b].count(t)) use[b].insert(t);
          }
          for (const auto& r : in.timing.resets) kill[b].insert(timer_of(r));
        }
      }
    }
    live_in.assign(n, {});
    for (bool changed = true; changed;) {
      changed = false;
      for (size_t b = n; b-- > 0;) {
        std::set<std::string> s = use[b];
        for (int succ : successors(p.blocks[b].term))
          for (const auto& t : live_in[succ])
            if (!kill[b].count(t)) s.insert(t);
        if (s != live_in[b]) {
          live_in[b] = std::move(s);
          changed = true;
        }
      }
    }
  }

  BlockSchedule block(int id, const std::map<std::string, int64_t>& entry) {
    const Block& b = p.blocks[static_cast<size_t>(id)];
    Graph g;
    std::map<std::string, Anchor> reset;
    for (const auto& [t, e] : entry) reset[t] = {0, -e};
    std::vector<Anchor> at(b.instrs.size());
    Anchor cur;  // where the next instruction would issue without waiting
    for (size_t i = 0; i < b.instrs.size(); ++i) {
      const Instr& in = b.instrs[i];
      if (!is_quantum(in)) {
        at[i] = cur;
        if (in.kind == InstrKind::TimerReset)
          for (const auto& a : in.args) reset[timer_of(a)] = cur;
        cur.offset += classical_cost(in);
        continue;
      }
      int n = g.add_node();
      std::string what = op_text(in);
      g.add(cur.node, n, cur.offset);
      for (const auto& c : in.timing.constraints) {
        std::string t = timer_of(c.timer);
        auto it = reset.find(t);
        if (it == reset.end())
          throw Error(Errc::SyncError, "timer '" + short_timer(t) + "' is read by " + what +
                                           " before it is started on every path");
        int64_t v = time_of(c.time);
        std::string label = "'" + constraint_text(c) + "' on " + what;
        const Anchor& a = it->second;
        g.add(a.node, n, a.offset + v + (c.cmp == ast::Cmp::Gt ? 1 : 0), label);
        if (c.cmp == ast::Cmp::Eq) g.add(n, a.node, -(a.offset + v), label);
      }
      at[i] = {n, 0};
      for (const auto& r : in.timing.resets) reset[timer_of(r)] = {n, 0};
      cur = {n, busy_cost(in, cfg)};
    }
    std::vector<int64_t> t = solve(g);
    BlockSchedule s;
    s.entry_timers = entry;
    s.wait.assign(b.instrs.size(), 0);
    s.start.assign(b.instrs.size(), 0);
    int64_t ready = 0;
    for (size_t i = 0; i < b.instrs.size(); ++i) {
      int64_t when = t[at[i].node] + at[i].offset;
      s.wait[i] = when - ready;
      s.start[i] = when;
      ready = when + busy_cost(b.instrs[i], cfg);
    }
    s.end = ready;
    // Exit timer values, used by successors.
    exits_[id].clear();
    for (const auto& [name, a] : reset) exits_[id][name] = s.end - (t[a.node] + a.offset);
    return s;
  }

  TimedIR run() {
    timer_liveness();
    size_t n = p.blocks.size();
    exits_.assign(n, {});
    TimedIR out;
    out.proc = &p;
    out.blocks.assign(n, {});
    // Reverse post-order.
    std::vector<int> order, state(n, 0);
    std::function<void(int)> dfs = [&](int b) {
      state[b] = 1;
      for (int s : successors(p.blocks[b].term))
        if (!state[s]) dfs(s);
      order.push_back(b);
    };
    dfs(p.entry);
    std::reverse(order.begin(), order.end());
    std::vector<int> rank(n, -1);
    for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);
    // Incoming edges (pred, which).
    std::vector<std::vector<std::pair<int, int>>> preds(n);
    for (int b : order) {
      auto succ = successors(p.blocks[b].term);
      for (size_t k = 0; k < succ.size(); ++k) preds[succ[k]].emplace_back(b, static_cast<int>(k));
    }
    std::vector<bool> done(n, false);
    for (int b : order) {
      std::map<std::string, int64_t> entry;
      std::vector<std::pair<int, int>> fwd;
      for (auto pr : preds[b])
        if (done[pr.first]) fwd.push_back(pr);
      const auto& live = live_in[b];
      if (!live.empty() && !fwd.empty()) {
        // Elapsed per live timer on each forward edge.
        std::vector<std::map<std::string, int64_t>> vals;
        for (auto [pb, which] : fwd) {
          std::map<std::string, int64_t> v;
          for (const auto& t : live) {
            auto it = exits_[pb].find(t);
            if (it == exits_[pb].end())
              throw Error(Errc::SyncError, "timer '" + short_timer(t) + "' is not started on every path into block " +
                                               std::to_string(b));
            v[t] = it->second + edge_cost(p.blocks[pb].term, which);
          }
          vals.push_back(std::move(v));
        }
        const std::string& ref = *live.begin();
        int64_t target = 0;
        for (const auto& v : vals) target = std::max(target, v.at(ref));
        for (size_t i = 0; i < fwd.size(); ++i) {
          int64_t pad = target - vals[i].at(ref);
          for (const auto& t : live)
            if (vals[i].at(t) + pad != vals[0].at(t) + (target - vals[0].at(ref)))
              throw Error(Errc::SyncError, "timer '" + short_timer(t) +
                                               "' has path-dependent values where control flow merges");
          out.blocks[fwd[i].first].edge_pad[fwd[i].second] = pad;
        }
        for (const auto& t : live) entry[t] = vals[0].at(t) + (target - vals[0].at(ref));
      }
      out.blocks[b] = block(b, entry);
      done[b] = true;
      // Back edges into already scheduled blocks.
      auto succ = successors(p.blocks[b].term);
      for (size_t k = 0; k < succ.size(); ++k) {
        int s = succ[k];
        if (!done[s] || rank[s] > rank[b] || live_in[s].empty()) continue;
        int64_t pad = -1;
        for (const auto& t : live_in[s]) {
          auto it = exits_[b].find(t);
          if (it == exits_[b].end())
            throw Error(Errc::SyncError, "timer '" + short_timer(t) + "' is not started on a loop back edge");
          int64_t need = out.blocks[s].entry_timers.at(t) - (it->second + edge_cost(p.blocks[b].term, static_cast<int>(k)));
          if (need < 0 || (pad >= 0 && need != pad))
            throw Error(Errc::SyncError, "timer '" + short_timer(t) + "' differs between loop iterations");
          pad = need;
        }
        out.blocks[b].edge_pad[k] = pad;
      }
    }
    return out;
  }

  std::vector<std::map<std::string, int64_t>> exits_;
};

}  // namespace

TimedIR schedule(const Proc& proc, const PlatformConfig& cfg) {
  return Scheduler(proc, cfg).run();
}

std::optional<Violation> verify_schedule(const TimedIR& timed, const PlatformConfig& cfg) {
  const Proc& p = *timed.proc;
  std::vector<std::map<std::string, int64_t>> exits(p.blocks.size());
  std::vector<bool> reached(p.blocks.size(), false);
  std::function<void(int)> mark = [&](int b) {
    if (reached[b]) return;
    reached[b] = true;
    for (int s : successors(p.blocks[b].term)) mark(s);
  };
  mark(p.entry);
  for (size_t b = 0; b < p.blocks.size(); ++b) {
    if (!reached[b]) continue;
    const Block& blk = p.blocks[b];
    const BlockSchedule& s = timed.blocks[b];
    std::map<std::string, int64_t> reset;  // timer -> cycle of last reset (block-relative)
    for (const auto& [t, e] : s.entry_timers) reset[t] = -e;
    std::map<int, std::pair<int64_t, std::string>> busy;  // qubit -> (free at, op)
    int64_t ready = 0;
    for (size_t i = 0; i < blk.instrs.size(); ++i) {
      const Instr& in = blk.instrs[i];
      int64_t st = s.start[i];
      // Overlap is the more specific diagnosis of an early start.
      if (is_quantum(in))
        for (int q : qubits_of(in)) {
          auto it = busy.find(q);
          if (it != busy.end() && it->second.first > st)
            return Violation{"qubit-overlap", op_text(in) + " starts at cycle " + std::to_string(st) + " while q" +
                                                  std::to_string(q) + " is busy with " + it->second.second +
                                                  " until cycle " + std::to_string(it->second.first)};
        }
      if (st < ready)
        return Violation{"order", "instruction " + std::to_string(i) + " of block " + std::to_string(b) +
                                      " issues at cycle " + std::to_string(st) + " before cycle " +
                                      std::to_string(ready)};
      if (in.kind == InstrKind::TimerReset)
        for (const auto& a : in.args) reset[a->value.as<TimerVal>().id] = st;
      if (is_quantum(in)) {
        for (const auto& c : in.timing.constraints) {
          std::string t = c.timer->value.as<TimerVal>().id;
          int64_t v = c.time->value.as<TimeVal>().ns;
          auto it = reset.find(t);
          if (it == reset.end())
            return Violation{"constraint", "timer '" + short_timer(t) + "' read by " + op_text(in) + " is not started"};
          int64_t val = st - it->second;
          bool ok = c.cmp == ast::Cmp::Eq ? val == v : c.cmp == ast::Cmp::Gt ? val > v : val >= v;
          if (!ok)
            return Violation{"constraint", "'" + constraint_text(c) + "' on " + op_text(in) + " violated: " +
                                               short_timer(t) + " = " + std::to_string(val) + "ns at cycle " +
                                               std::to_string(st)};
        }
        int64_t dur = cfg.at(in.callee).duration_ns;
        for (int q : qubits_of(in)) busy[q] = {st + dur, op_text(in)};
        for (const auto& r : in.timing.resets) reset[r->value.as<TimerVal>().id] = st;
      }
      ready = st + busy_cost(in, cfg);
    }
    for (const auto& [t, r] : reset) exits[b][t] = s.end - r;
    if (s.end < ready) return Violation{"order", "block " + std::to_string(b) + " ends before its last instruction"};
  }
  // Timer values must agree on every edge into a block that reads them.
  for (size_t b = 0; b < p.blocks.size(); ++b) {
    if (!reached[b]) continue;
    auto succ = successors(p.blocks[b].term);
    for (size_t k = 0; k < succ.size(); ++k) {
      const BlockSchedule& to = timed.blocks[succ[k]];
      for (const auto& [t, e] : to.entry_timers) {
        auto it = exits[b].find(t);
        int64_t got = it == exits[b].end() ? -1
                                           : it->second + edge_cost(p.blocks[b].term, static_cast<int>(k)) +
                                                 timed.blocks[b].edge_pad[k];
        if (got != e)
          return Violation{"timer-sync", "timer '" + short_timer(t) + "' enters block " + std::to_string(succ[k]) +
                                             " at " + std::to_string(got) + "ns from block " + std::to_string(b) +
                                             ", expected " + std::to_string(e) + "ns"};
      }
    }
  }
  return std::nullopt;
}

std::string dump_schedule(const TimedIR& timed) {
  std::ostringstream os;
  const Proc& p = *timed.proc;
  for (size_t b = 0; b < p.blocks.size(); ++b) {
    const Block& blk = p.blocks[b];
    bool any = std::any_of(blk.instrs.begin(), blk.instrs.end(), [](const Instr& in) { return is_quantum(in); });
    if (!any) continue;
    if (p.blocks.size() > 1) os << "# block " << b << "\n";
    for (size_t i = 0; i < blk.instrs.size(); ++i) {
      const Instr& in = blk.instrs[i];
      if (!is_quantum(in)) continue;
      os << timed.blocks[b].start[i] << ' ' << in.callee << ' ';
      auto qs = qubits_of(in);
      for (size_t k = 0; k < qs.size(); ++k) os << (k ? "," : "") << 'q' << qs[k];
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace quingo
