#pragma once

#include <string>

#include "repro/environment.hpp"

namespace repro {

/// Contract for a real-device backend. No implementation ships in this
/// repository; the interface is published so an automation backend (ADB,
/// emulator, ...) can slot in behind the Environment contract without
/// touching the search engine.
///
/// Implementations are expected to honor the Environment determinism
/// contract as far as the device allows, to translate ActionCommand targets
/// to screen coordinates themselves, and to deliver screenshots as opaque
/// attachment bytes on every observation.
class DeviceAdapter : public Environment {
public:
  /// Attach to a device or emulator identified by `serial` and install or
  /// launch the app under test from `app_package`.
  virtual void connect(const std::string& serial, const std::string& app_package) = 0;

  /// Tear down the session; the instance may not be reused afterwards.
  virtual void disconnect() = 0;
};

}  // namespace repro
