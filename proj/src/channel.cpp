#include "radiosim/channel.hpp"

#include <stdexcept>

namespace radiosim {

const char* model_name(ChannelModel m) {
  switch (m) {
    case ChannelModel::NoCd: return "nocd";
    case ChannelModel::Cd: return "cd";
    case ChannelModel::Beep: return "beep";
  }
  return "?";
}

ChannelModel model_from_name(const std::string& name) {
  if (name == "nocd") return ChannelModel::NoCd;
  if (name == "cd") return ChannelModel::Cd;
  if (name == "beep") return ChannelModel::Beep;
  throw std::invalid_argument("unknown channel model: " + name);
}

const char* action_name(ActionKind k) {
  switch (k) {
    case ActionKind::Transmit: return "transmit";
    case ActionKind::Listen: return "listen";
    case ActionKind::Beep: return "beep";
    case ActionKind::Silent: return "silent";
  }
  return "?";
}

const char* reception_name(ReceptionKind k) {
  switch (k) {
    case ReceptionKind::Message: return "message";
    case ReceptionKind::Silence: return "silence";
    case ReceptionKind::Collision: return "collision";
    case ReceptionKind::BeepHeard: return "beep_heard";
    case ReceptionKind::NoBeep: return "no_beep";
  }
  return "?";
}

ActionKind action_from_name(const std::string& name) {
  if (name == "transmit") return ActionKind::Transmit;
  if (name == "listen") return ActionKind::Listen;
  if (name == "beep") return ActionKind::Beep;
  if (name == "silent") return ActionKind::Silent;
  throw std::invalid_argument("unknown action kind: " + name);
}

ReceptionKind reception_from_name(const std::string& name) {
  if (name == "message") return ReceptionKind::Message;
  if (name == "silence") return ReceptionKind::Silence;
  if (name == "collision") return ReceptionKind::Collision;
  if (name == "beep_heard") return ReceptionKind::BeepHeard;
  if (name == "no_beep") return ReceptionKind::NoBeep;
  throw std::invalid_argument("unknown reception kind: " + name);
}

std::vector<Reception> step_radio_round(const Topology& t, std::span<const RoundAction> actions,
                                        bool cd) {
  const int n = t.n();
  if (static_cast<int>(actions.size()) != n)
    throw std::invalid_argument("radio round: one action per node required");
  std::vector<int> count(static_cast<size_t>(n), 0);
  std::vector<const Bitstring*> heard(static_cast<size_t>(n), nullptr);
  for (int u = 0; u < n; ++u) {
    const RoundAction& a = actions[static_cast<size_t>(u)];
    if (a.kind == ActionKind::Beep || a.kind == ActionKind::Silent)
      throw std::invalid_argument("radio round: beep actions are not legal under radio semantics");
    if (a.kind != ActionKind::Transmit) continue;
    for (int v : t.out(u)) {
      ++count[static_cast<size_t>(v)];
      heard[static_cast<size_t>(v)] = &a.payload;
    }
  }
  std::vector<Reception> rx(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) {
    if (actions[static_cast<size_t>(v)].kind == ActionKind::Transmit) continue;  // Silence
    const int c = count[static_cast<size_t>(v)];
    if (c == 1)
      rx[static_cast<size_t>(v)] = {ReceptionKind::Message, *heard[static_cast<size_t>(v)]};
    else if (c > 1 && cd)
      rx[static_cast<size_t>(v)].kind = ReceptionKind::Collision;
  }
  return rx;
}

std::vector<Reception> step_beep_round(const Topology& t, std::span<const RoundAction> actions) {
  const int n = t.n();
  if (static_cast<int>(actions.size()) != n)
    throw std::invalid_argument("beep round: one action per node required");
  std::vector<Reception> rx(static_cast<size_t>(n), Reception{ReceptionKind::NoBeep, {}});
  for (int u = 0; u < n; ++u) {
    const ActionKind k = actions[static_cast<size_t>(u)].kind;
    if (k == ActionKind::Transmit || k == ActionKind::Listen)
      throw std::invalid_argument("beep round: radio actions are not legal under beep semantics");
    if (k != ActionKind::Beep) continue;
    for (int v : t.out(u))
      if (actions[static_cast<size_t>(v)].kind == ActionKind::Silent)
        rx[static_cast<size_t>(v)].kind = ReceptionKind::BeepHeard;
  }
  return rx;
}

}  // namespace radiosim
