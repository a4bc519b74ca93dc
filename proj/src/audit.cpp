#include "radiosim/audit.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include <json.hpp>

namespace radiosim {

namespace {

std::vector<TraceSourceRec> sources_to_recs(const Engine& eng, const PayloadMap& sources) {
  std::vector<TraceSourceRec> recs;
  for (int v = 0; v < static_cast<int>(sources.size()); ++v)
    if (sources[static_cast<size_t>(v)] && eng.is_active(v))
      recs.push_back({v, *sources[static_cast<size_t>(v)]});
  return recs;
}

}  // namespace

void check_pmb_contract(const std::vector<TraceSourceRec>& sources,
                        const std::vector<TraceOutputRec>& outputs, uint64_t round,
                        std::vector<Violation>& out) {
  if (sources.empty()) {
    for (const auto& o : outputs)
      if (!o.m.empty())
        out.push_back({"pmb", "nonempty_without_sources", round, o.node, o.m.str()});
    return;
  }
  std::set<Bitstring> payloads;
  for (const auto& s : sources) payloads.insert(s.payload);
  for (const auto& o : outputs) {
    if (o.m.empty())
      out.push_back({"pmb", "missing_payload", round, o.node, ""});
    else if (!payloads.count(o.m))
      out.push_back({"pmb", "foreign_payload", round, o.node, o.m.str()});
  }
}

void check_selection_contract(const std::vector<TraceSourceRec>& sources,
                              const std::vector<TraceOutputRec>& outputs, uint64_t round,
                              std::vector<Violation>& out) {
  if (sources.empty()) {
    for (const auto& o : outputs)
      if (!o.m.empty() || o.b != 0)
        out.push_back({"selection", "output_without_candidates", round, o.node, o.m.str()});
    return;
  }
  if (sources.size() == 1) {
    const Bitstring& id = sources.front().payload;
    for (const auto& o : outputs)
      if (o.m != id || o.b != 1)
        out.push_back({"selection", "sole_candidate_not_agreed", round, o.node, o.m.str()});
    return;
  }
  std::set<Bitstring> ids;
  Bitstring min_id = sources.front().payload;
  for (const auto& s : sources) {
    ids.insert(s.payload);
    if (s.payload < min_id) min_id = s.payload;
  }
  for (const auto& o : outputs) {
    if (o.b != 0) {
      out.push_back({"selection", "spurious_single_verdict", round, o.node, ""});
      continue;
    }
    if (o.m.empty())
      out.push_back({"selection", "missing_payload", round, o.node, ""});
    else if (!ids.count(o.m))
      out.push_back({"selection", "foreign_payload", round, o.node, o.m.str()});
    else if (o.m == min_id && ids.size() > 1)
      out.push_back({"selection", "minimum_survived", round, o.node, o.m.str()});
  }
}

void check_search_contract(const std::vector<TraceSourceRec>& sources,
                           const std::vector<TraceOutputRec>& outputs, uint64_t round,
                           std::vector<Violation>& out) {
  if (outputs.empty()) return;
  const int ell = outputs.front().m.size();
  Bitstring expect;
  if (sources.empty()) {
    expect = Bitstring::zeros(ell);  // every broadcast stays silent
  } else {
    Bitstring max_id = sources.front().payload;
    for (const auto& s : sources)
      if (max_id < s.payload) max_id = s.payload;
    expect = max_id.prefix(ell);
  }
  for (const auto& o : outputs)
    if (o.m != expect)
      out.push_back({"search", "prefix_mismatch", round, o.node, o.m.str()});
}

void check_beep_wave_contract(const Topology& t, const std::vector<TraceSourceRec>& sources,
                              const std::vector<TraceOutputRec>& outputs,
                              const std::vector<int64_t>* first_beep, uint64_t round,
                              std::vector<Violation>& out) {
  if (sources.empty()) {
    for (const auto& o : outputs)
      if (!o.m.empty())
        out.push_back({"beep_wave", "nonempty_without_sources", round, o.node, o.m.str()});
    return;
  }
  if (sources.size() == 1) {
    const int s = sources.front().node;
    const Bitstring& f = sources.front().payload;
    std::vector<int> dist = t.distances_from(s);
    for (const auto& o : outputs) {
      if (o.m != f)
        out.push_back({"beep_wave", "single_source_mismatch", round, o.node, o.m.str()});
      if (first_beep &&
          (*first_beep)[static_cast<size_t>(o.node)] != dist[static_cast<size_t>(o.node)])
        out.push_back({"beep_wave", "first_beep_off_distance", round, o.node,
                       std::to_string((*first_beep)[static_cast<size_t>(o.node)])});
    }
    return;
  }
  for (const auto& o : outputs)
    if (o.m.empty())
      out.push_back({"beep_wave", "silent_node", round, o.node, ""});
  // some node must dominate the OR of two distinct source payloads
  bool witness_exists = false;
  for (size_t a = 0; a < sources.size() && !witness_exists; ++a)
    for (size_t b = a + 1; b < sources.size() && !witness_exists; ++b) {
      if (sources[a].payload == sources[b].payload) continue;
      const Bitstring want = Bitstring::bit_or(sources[a].payload, sources[b].payload);
      for (const auto& o : outputs) {
        if (o.m.size() != want.size()) continue;
        bool covers = true;
        for (int i = 0; i < want.size() && covers; ++i)
          if (want.bit(i) == 1 && o.m.bit(i) == 0) covers = false;
        if (covers) {
          witness_exists = true;
          break;
        }
      }
    }
  // with all payloads identical no witness is required
  std::set<Bitstring> distinct;
  for (const auto& s : sources) distinct.insert(s.payload);
  if (distinct.size() > 1 && !witness_exists)
    out.push_back({"beep_wave", "no_or_witness", round, -1, ""});
}

void ContractAuditor::on_pmb(const Engine& eng, const PayloadMap& sources,
                             const std::vector<Bitstring>& out) {
  std::vector<TraceOutputRec> outputs;
  for (int v = 0; v < static_cast<int>(out.size()); ++v)
    if (eng.is_active(v)) outputs.push_back({v, out[static_cast<size_t>(v)], -1, -1});
  check_pmb_contract(sources_to_recs(eng, sources), outputs, eng.round(), violations_);
}

void ContractAuditor::on_selection(const Engine& eng, const PayloadMap& candidate_ids,
                                   const SelectionResult& r) {
  std::vector<TraceOutputRec> outputs;
  for (int v = 0; v < static_cast<int>(r.m.size()); ++v)
    if (eng.is_active(v))
      outputs.push_back({v, r.m[static_cast<size_t>(v)], r.b[static_cast<size_t>(v)],
                         r.witness[static_cast<size_t>(v)]});
  check_selection_contract(sources_to_recs(eng, candidate_ids), outputs, eng.round(), violations_);
}

void ContractAuditor::on_search(const Engine& eng, const PayloadMap& candidate_ids, int,
                                const std::vector<Bitstring>& out) {
  std::vector<TraceOutputRec> outputs;
  for (int v = 0; v < static_cast<int>(out.size()); ++v)
    if (eng.is_active(v)) outputs.push_back({v, out[static_cast<size_t>(v)], -1, -1});
  check_search_contract(sources_to_recs(eng, candidate_ids), outputs, eng.round(), violations_);
}

void ContractAuditor::on_beep_wave(const Engine& eng, const PayloadMap& sources, int,
                                   const BeepWaveResult& r) {
  std::vector<TraceOutputRec> outputs;
  for (int v = 0; v < static_cast<int>(r.m.size()); ++v)
    if (eng.is_active(v)) outputs.push_back({v, r.m[static_cast<size_t>(v)], -1, -1});
  check_beep_wave_contract(eng.topo(), sources_to_recs(eng, sources), outputs, &r.first_beep,
                           eng.round(), violations_);
}

std::map<std::string, uint64_t> ContractAuditor::counts() const {
  std::map<std::string, uint64_t> c;
  for (const auto& v : violations_) ++c[v.primitive];
  return c;
}

std::map<std::string, uint64_t> AuditReport::counts() const {
  std::map<std::string, uint64_t> c;
  for (const auto& v : violations) ++c[v.primitive];
  return c;
}

std::string AuditReport::to_json() const {
  nlohmann::ordered_json j;
  j["rounds_checked"] = rounds_checked;
  j["invocations_checked"] = invocations_checked;
  nlohmann::ordered_json cj = nlohmann::ordered_json::object();
  for (const auto& [k, v] : counts()) cj[k] = v;
  j["violation_counts"] = cj;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& v : violations) {
    nlohmann::ordered_json e;
    e["primitive"] = v.primitive;
    e["kind"] = v.kind;
    e["round"] = v.round;
    e["node"] = v.node;
    e["detail"] = v.detail;
    arr.push_back(std::move(e));
  }
  j["violations"] = arr;
  return j.dump();
}

AuditReport audit_trace(const Trace& trace) {
  AuditReport report;
  Topology topo = Topology::build(trace.header.topology);
  if (topo.n() != trace.header.n)
    throw std::runtime_error("audit: header node count does not match topology");
  const int n = topo.n();

  struct OpenInvocation {
    std::string primitive;
    uint64_t begin_round = 0;
    std::vector<TraceSourceRec> sources;
    std::vector<int64_t> first_beep;
  };
  std::map<uint64_t, OpenInvocation> open;

  std::vector<RoundAction> actions(static_cast<size_t>(n));
  for (const auto& line : trace.lines) {
    if (std::holds_alternative<TraceRound>(line)) {
      const auto& r = std::get<TraceRound>(line);
      if (static_cast<int>(r.actions.size()) != n || static_cast<int>(r.receptions.size()) != n) {
        report.violations.push_back(
            {"structure", "wrong_record_width", r.round, -1,
             std::to_string(r.actions.size()) + " actions, " +
                 std::to_string(r.receptions.size()) + " receptions"});
        continue;
      }
      for (const auto& a : r.actions) actions[static_cast<size_t>(a.node)] = {a.kind, a.payload};
      std::vector<Reception> expect;
      if (trace.header.model == ChannelModel::Beep)
        expect = step_beep_round(topo, actions);
      else
        expect = step_radio_round(topo, actions, trace.header.model == ChannelModel::Cd);
      for (const auto& rec : r.receptions) {
        const Reception& e = expect[static_cast<size_t>(rec.node)];
        if (e.kind != rec.kind || (e.kind == ReceptionKind::Message && e.payload != rec.payload))
          report.violations.push_back({"channel", "reception_mismatch", r.round, rec.node,
                                       std::string(reception_name(rec.kind)) + " recorded, " +
                                           reception_name(e.kind) + " derived"});
      }
      ++report.rounds_checked;
      // track first beeps for wave invocations
      for (auto& [inv, o] : open) {
        if (o.primitive != "beep_wave") continue;
        for (const auto& a : r.actions)
          if (a.kind == ActionKind::Beep && o.first_beep[static_cast<size_t>(a.node)] < 0)
            o.first_beep[static_cast<size_t>(a.node)] =
                static_cast<int64_t>(r.round - o.begin_round);
      }
    } else {
      const auto& e = std::get<TraceEvent>(line);
      if (e.begin) {
        OpenInvocation o;
        o.primitive = e.primitive;
        o.begin_round = e.round;
        o.sources = e.sources;
        if (e.primitive == "beep_wave") o.first_beep.assign(static_cast<size_t>(n), -1);
        open[e.invocation] = std::move(o);
      } else {
        auto it = open.find(e.invocation);
        if (it == open.end()) {
          report.violations.push_back({"structure", "end_without_begin", e.round, -1, e.primitive});
          continue;
        }
        const OpenInvocation& o = it->second;
        if (e.primitive == "pmb")
          check_pmb_contract(o.sources, e.outputs, e.round, report.violations);
        else if (e.primitive == "selection")
          check_selection_contract(o.sources, e.outputs, e.round, report.violations);
        else if (e.primitive == "search")
          check_search_contract(o.sources, e.outputs, e.round, report.violations);
        else if (e.primitive == "beep_wave")
          check_beep_wave_contract(topo, o.sources, e.outputs, &o.first_beep, e.round,
                                   report.violations);
        ++report.invocations_checked;
        open.erase(it);
      }
    }
  }
  for (const auto& [inv, o] : open)
    report.violations.push_back({"structure", "begin_without_end", o.begin_round, -1, o.primitive});
  return report;
}

}  // namespace radiosim
