// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include "frobcirc/covers.hpp"
#include "frobcirc/eisenstein.hpp"
#include "frobcirc/numtheory.hpp"
#include "frobcirc/scheduler.hpp"
#include "frobcirc/simulator.hpp"

namespace frobcirc::json {

using nlohmann::json;

json to_json(const Classification& c);
json to_json(const FrobeniusCirculant& g);
json to_json(EJInt u);
json to_json(CanonicalPair cd);
json to_json(const DiophantineWitness& w);
json to_json(const Metrics& m);
json to_json(const BroadcastCertificate& b);
json to_json(const DistanceDiagram& d, const FrobeniusCirculant& g);
json to_json(const BroadcastSchedule& s);
json to_json(const GossipReport& r);
json to_json(const BroadcastReport& r);
json to_json(const CoverMap& m);

/// Gossip steps as arrays of {arc: [tail, head], origin}. With expand, each
/// translation-invariant step is written out for every origin.
json to_json(const GossipSchedule& s, bool expand);

/// Circulant -> EJ summary: α, canonical (c, d), witness and the first
/// `sample` entries of the isomorphism.
json conversion_json(const FrobeniusCirculant& g, std::size_t sample);
/// EJ -> circulant summary for c + dρ.
json ej_conversion_json(EJInt alpha, std::size_t sample);

json quotient_json(const FrobeniusCirculant& g, const CirculantQuotient& q);
json ej_cover_json(EJInt alpha, EJInt beta, const EJCover& c);

EJInt ej_from_json(const json& j);
CoverMap cover_map_from_json(const json& j);
GossipSchedule gossip_from_json(const json& j);
BroadcastSchedule broadcast_from_json(const json& j);

}  // namespace frobcirc::json
