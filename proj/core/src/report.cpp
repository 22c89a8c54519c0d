#include <sstream>

#include "termfuse/fusion.hpp"

namespace termfuse {

namespace {

std::string_view conflict_name(ConflictKind kind) {
  return kind == ConflictKind::AmbiguousMatch ? "ambiguous-match" : "non-preferred-bridge";
}

std::string_view reason_name(DropReason reason) {
  switch (reason) {
    case DropReason::SelfLoop: return "self-loop";
    case DropReason::Dangling: return "dangling";
    case DropReason::OwnEntry: return "own-entry";
    case DropReason::CycleIntroduced: return "cycle-introduced";
  }
  return "unknown";
}

}  // namespace

std::string FusionReport::to_text() const {
  std::ostringstream out;
  for (const auto& m : merges) {
    out << "MERGE " << m.host << ' ' << m.absorbed << " via \"" << m.term << "\"@" << m.language << '\n';
  }
  for (const auto& c : conflicts) {
    out << "CONFLICT " << conflict_name(c.kind) << ' ' << c.entry << " input=" << c.collection << " partitions=";
    for (std::size_t i = 0; i < c.candidates.size(); ++i) out << (i ? "," : "") << c.candidates[i];
    out << " via \"" << c.term << "\"@" << c.language << '\n';
  }
  for (const auto& d : dropped_edges) {
    out << "DROPPED-EDGE " << d.source << ' ' << d.category << ' ' << d.target;
    if (!d.typology.empty()) out << " typology=\"" << d.typology << '"';
    out << " reason=" << reason_name(d.reason) << '\n';
  }
  for (const auto& a : aliases) {
    out << "ALIAS " << a.old_id << ' ' << a.new_id << " input=" << a.collection << '\n';
  }
  out << "STATS entries_in=" << entries_in << " partitions=" << partitions << " merges=" << merges.size()
      << " conflicts=" << conflicts.size() << " dropped_edges=" << dropped_edges.size() << '\n';
  for (const auto& s : stats) {
    out << "STATS resource=\"" << s.institution << '|' << s.database << "\" entries_in=" << s.entries_in
        << " terms_in=" << s.terms_in << " terms_out=" << s.terms_out << " variants_out=" << s.variants_out << '\n';
  }
  return out.str();
}

}  // namespace termfuse
