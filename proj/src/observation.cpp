#include "repro/observation.hpp"

#include <cstdio>
#include <sstream>

#include "repro/digest.hpp"
#include "repro/errors.hpp"

namespace repro {

std::string_view to_string(Orientation o) {
  return o == Orientation::portrait ? "portrait" : "landscape";
}

std::uint64_t observation_digest(const Observation& obs) {
  DigestWriter w;
  w.str(obs.activity);
  w.byte(obs.orientation == Orientation::portrait ? 0 : 1);
  w.boolean(obs.dialog_open);
  w.boolean(obs.crash);
  w.u64(obs.widgets.size());
  for (const auto& widget : obs.widgets) {
    w.str(widget.id);
    w.str(widget.label);
    w.str(widget.kind);
    w.boolean(widget.enabled);
    w.boolean(widget.checked);
  }
  w.bytes(obs.attachment.data(), obs.attachment.size());
  return w.value();
}

std::string summarize_observation(const Observation& obs) {
  std::ostringstream out;
  out << "activity=" << obs.activity << " orientation=" << to_string(obs.orientation)
      << " dialog=" << (obs.dialog_open ? "open" : "closed");
  if (obs.crash) out << " CRASH";
  out << " widgets=[";
  for (std::size_t i = 0; i < obs.widgets.size(); ++i) {
    if (i) out << ", ";
    out << obs.widgets[i].label;
  }
  out << "]";
  return out.str();
}

std::string describe_observation(const Observation& obs) {
  std::ostringstream out;
  out << "Activity: " << obs.activity << "\n";
  out << "Orientation: " << to_string(obs.orientation) << "\n";
  out << "Dialog open: " << (obs.dialog_open ? "yes" : "no") << "\n";
  if (obs.crash) out << "The app has crashed on this screen.\n";
  out << "Widgets:\n";
  if (obs.widgets.empty()) out << "  (none)\n";
  for (const auto& widget : obs.widgets) {
    out << "  - id=" << widget.id << " label=\"" << widget.label << "\" kind=" << widget.kind
        << (widget.enabled ? "" : " disabled") << (widget.checked ? " checked" : "") << "\n";
  }
  return out.str();
}

std::string digest_hex(std::uint64_t digest) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(digest));
  return buf;
}

std::uint64_t parse_digest_hex(const std::string& text) {
  std::string body = text;
  if (body.rfind("0x", 0) == 0 || body.rfind("0X", 0) == 0) body = body.substr(2);
  if (body.empty() || body.size() > 16) throw SpecLoadError("bad digest literal '" + text + "'");
  std::uint64_t value = 0;
  for (char c : body) {
    value <<= 4;
    if (c >= '0' && c <= '9') value |= static_cast<std::uint64_t>(c - '0');
    else if (c >= 'a' && c <= 'f') value |= static_cast<std::uint64_t>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F') value |= static_cast<std::uint64_t>(c - 'A' + 10);
    else throw SpecLoadError("bad digest literal '" + text + "'");
  }
  return value;
}

}  // namespace repro
