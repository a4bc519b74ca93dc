#pragma once

#include <span>
#include <vector>

#include "radiosim/bitstring.hpp"
#include "radiosim/topology.hpp"

namespace radiosim {

enum class ChannelModel { NoCd, Cd, Beep };

const char* model_name(ChannelModel m);
ChannelModel model_from_name(const std::string& name);

enum class ActionKind { Transmit, Listen, Beep, Silent };
enum class ReceptionKind { Message, Silence, Collision, BeepHeard, NoBeep };

const char* action_name(ActionKind k);
const char* reception_name(ReceptionKind k);
ActionKind action_from_name(const std::string& name);
ReceptionKind reception_from_name(const std::string& name);

struct RoundAction {
  ActionKind kind = ActionKind::Listen;
  Bitstring payload;  // Transmit only
};

struct Reception {
  ReceptionKind kind = ReceptionKind::Silence;
  Bitstring payload;  // Message only
};

// One synchronous radio round. A listener with exactly one transmitting
// in-neighbor receives that payload; zero gives Silence; two or more give
// Silence without collision detection and Collision with it. Transmitters
// always receive Silence. Rejects Beep/Silent actions.
std::vector<Reception> step_radio_round(const Topology& t, std::span<const RoundAction> actions,
                                        bool cd);

// One synchronous beep round. A silent node receives BeepHeard iff at least
// one neighbor beeped; beeping nodes receive NoBeep. Rejects Transmit/Listen.
std::vector<Reception> step_beep_round(const Topology& t, std::span<const RoundAction> actions);

}  // namespace radiosim
