#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "radiosim/channel.hpp"
#include "radiosim/topology.hpp"

namespace radiosim {

struct TraceHeader {
  std::string protocol;
  int know_n = 1;
  int know_d = 0;
  int alpha = 4;
  uint64_t round_cap = 10000000;
  TopologySpec topology;
  uint64_t seed = 0;
  int n = 1;
  int D = 0;
  ChannelModel model = ChannelModel::NoCd;
};

struct TraceActionRec {
  int node;
  ActionKind kind;
  Bitstring payload;  // transmit only
};

struct TraceReceptionRec {
  int node;
  ReceptionKind kind;
  Bitstring payload;  // message only
};

struct TraceRound {
  uint64_t round = 0;
  std::string primitive;
  std::string phase;
  int iteration = 0;
  uint64_t invocation = 0;
  std::vector<TraceActionRec> actions;
  std::vector<TraceReceptionRec> receptions;
};

struct TraceSourceRec {
  int node;
  Bitstring payload;
};

// b and w carry Selection's bit and witness flag; -1 means not applicable.
struct TraceOutputRec {
  int node;
  Bitstring m;
  int b = -1;
  int w = -1;
};

struct TraceEvent {
  bool begin = true;
  uint64_t invocation = 0;
  std::string primitive;
  uint64_t round = 0;
  std::vector<TraceSourceRec> sources;   // begin
  std::vector<TraceOutputRec> outputs;   // end
};

using TraceLine = std::variant<TraceRound, TraceEvent>;

struct Trace {
  TraceHeader header;
  std::vector<TraceLine> lines;

  // Line-delimited JSON with a fixed field order, so identical runs give
  // byte-identical files.
  std::string to_jsonl() const;
  static Trace from_jsonl(std::istream& in);  // throws with the offending line number
};

}  // namespace radiosim
