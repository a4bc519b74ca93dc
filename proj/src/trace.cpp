#include "radiosim/trace.hpp"

#include <istream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace radiosim {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json topology_json(const TopologySpec& s) {
  ordered_json j;
  j["family"] = family_name(s.family);
  j["n"] = s.n;
  j["directed"] = s.directed;
  j["p"] = s.p;
  j["layers"] = s.layers;
  j["seed"] = s.seed;
  return j;
}

TopologySpec topology_from_json(const ordered_json& j) {
  TopologySpec s;
  s.family = family_from_name(j.at("family").get<std::string>());
  s.n = j.at("n").get<int>();
  s.directed = j.at("directed").get<bool>();
  s.p = j.at("p").get<double>();
  s.layers = j.at("layers").get<int>();
  s.seed = j.at("seed").get<uint64_t>();
  return s;
}

ordered_json header_json(const TraceHeader& h) {
  ordered_json j;
  j["protocol"] = h.protocol;
  ordered_json params;
  params["n"] = h.know_n;
  params["d"] = h.know_d;
  params["alpha"] = h.alpha;
  params["round_cap"] = h.round_cap;
  params["topology"] = topology_json(h.topology);
  j["params"] = params;
  j["seed"] = h.seed;
  j["n"] = h.n;
  j["D"] = h.D;
  j["model"] = model_name(h.model);
  return j;
}

ordered_json round_json(const TraceRound& r) {
  ordered_json j;
  j["round"] = r.round;
  j["primitive"] = r.primitive;
  j["phase"] = r.phase;
  j["iteration"] = r.iteration;
  j["invocation"] = r.invocation;
  ordered_json actions = ordered_json::array();
  for (const auto& a : r.actions) {
    ordered_json e;
    e["node"] = a.node;
    e["kind"] = action_name(a.kind);
    if (a.kind == ActionKind::Transmit) e["payload"] = a.payload.str();
    actions.push_back(std::move(e));
  }
  j["actions"] = std::move(actions);
  ordered_json rx = ordered_json::array();
  for (const auto& x : r.receptions) {
    ordered_json e;
    e["node"] = x.node;
    e["kind"] = reception_name(x.kind);
    if (x.kind == ReceptionKind::Message) e["payload"] = x.payload.str();
    rx.push_back(std::move(e));
  }
  j["receptions"] = std::move(rx);
  return j;
}

ordered_json event_json(const TraceEvent& e) {
  ordered_json j;
  j["event"] = e.begin ? "begin" : "end";
  j["invocation"] = e.invocation;
  j["primitive"] = e.primitive;
  j["round"] = e.round;
  if (e.begin) {
    ordered_json src = ordered_json::array();
    for (const auto& s : e.sources) {
      ordered_json r;
      r["node"] = s.node;
      r["payload"] = s.payload.str();
      src.push_back(std::move(r));
    }
    j["sources"] = std::move(src);
  } else {
    ordered_json out = ordered_json::array();
    for (const auto& o : e.outputs) {
      ordered_json r;
      r["node"] = o.node;
      r["m"] = o.m.str();
      if (o.b >= 0) r["b"] = o.b;
      if (o.w >= 0) r["w"] = o.w;
      out.push_back(std::move(r));
    }
    j["outputs"] = std::move(out);
  }
  return j;
}

}  // namespace

std::string Trace::to_jsonl() const {
  std::string out = header_json(header).dump();
  out.push_back('\n');
  for (const auto& line : lines) {
    if (std::holds_alternative<TraceRound>(line))
      out += round_json(std::get<TraceRound>(line)).dump();
    else
      out += event_json(std::get<TraceEvent>(line)).dump();
    out.push_back('\n');
  }
  return out;
}

Trace Trace::from_jsonl(std::istream& in) {
  Trace t;
  std::string line;
  size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const std::exception& e) {
      throw std::runtime_error("trace parse error at line " + std::to_string(lineno) + ": " +
                               e.what());
    }
    try {
      if (j.contains("protocol")) {
        TraceHeader h;
        h.protocol = j.at("protocol").get<std::string>();
        const auto& params = j.at("params");
        h.know_n = params.at("n").get<int>();
        h.know_d = params.at("d").get<int>();
        h.alpha = params.at("alpha").get<int>();
        h.round_cap = params.at("round_cap").get<uint64_t>();
        h.topology = topology_from_json(params.at("topology"));
        h.seed = j.at("seed").get<uint64_t>();
        h.n = j.at("n").get<int>();
        h.D = j.at("D").get<int>();
        h.model = model_from_name(j.at("model").get<std::string>());
        t.header = h;
        have_header = true;
      } else if (j.contains("round") && j.contains("actions")) {
        TraceRound r;
        r.round = j.at("round").get<uint64_t>();
        r.primitive = j.at("primitive").get<std::string>();
        r.phase = j.at("phase").get<std::string>();
        r.iteration = j.at("iteration").get<int>();
        r.invocation = j.at("invocation").get<uint64_t>();
        for (const auto& e : j.at("actions")) {
          TraceActionRec a;
          a.node = e.at("node").get<int>();
          a.kind = action_from_name(e.at("kind").get<std::string>());
          if (e.contains("payload")) a.payload = Bitstring(e.at("payload").get<std::string>());
          r.actions.push_back(std::move(a));
        }
        for (const auto& e : j.at("receptions")) {
          TraceReceptionRec x;
          x.node = e.at("node").get<int>();
          x.kind = reception_from_name(e.at("kind").get<std::string>());
          if (e.contains("payload")) x.payload = Bitstring(e.at("payload").get<std::string>());
          r.receptions.push_back(std::move(x));
        }
        t.lines.emplace_back(std::move(r));
      } else if (j.contains("event")) {
        TraceEvent e;
        e.begin = j.at("event").get<std::string>() == "begin";
        e.invocation = j.at("invocation").get<uint64_t>();
        e.primitive = j.at("primitive").get<std::string>();
        e.round = j.at("round").get<uint64_t>();
        if (e.begin) {
          for (const auto& s : j.at("sources")) {
            TraceSourceRec r;
            r.node = s.at("node").get<int>();
            r.payload = Bitstring(s.at("payload").get<std::string>());
            e.sources.push_back(std::move(r));
          }
        } else {
          for (const auto& o : j.at("outputs")) {
            TraceOutputRec r;
            r.node = o.at("node").get<int>();
            r.m = Bitstring(o.at("m").get<std::string>());
            if (o.contains("b")) r.b = o.at("b").get<int>();
            if (o.contains("w")) r.w = o.at("w").get<int>();
            e.outputs.push_back(std::move(r));
          }
        }
        t.lines.emplace_back(std::move(e));
      } else {
        throw std::runtime_error("unrecognized record shape");
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("trace parse error at line " + std::to_string(lineno) + ": " +
                               e.what());
    }
  }
  if (!have_header) throw std::runtime_error("trace parse error: missing header record");
  return t;
}

}  // namespace radiosim
