#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

namespace resilience {

enum class Channel { X = 0, Y = 1, Z = 2 };

inline constexpr std::array<Channel, 3> kChannels{Channel::X, Channel::Y,
                                                  Channel::Z};

constexpr std::string_view channel_name(Channel c) {
  switch (c) {
    case Channel::X: return "x";
    case Channel::Y: return "y";
    case Channel::Z: return "z";
  }
  return "?";
}

inline Channel channel_from_name(std::string_view name) {
  if (name == "x") return Channel::X;
  if (name == "y") return Channel::Y;
  if (name == "z") return Channel::Z;
  throw std::invalid_argument("unknown channel name: " + std::string(name));
}

// One value per Pauli channel (scaling dimensions, couplings, error rates).
struct PerChannel {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double& operator[](Channel c) {
    switch (c) {
      case Channel::X: return x;
      case Channel::Y: return y;
      case Channel::Z: return z;
    }
    throw std::invalid_argument("bad channel");
  }
  double operator[](Channel c) const {
    return const_cast<PerChannel&>(*this)[c];
  }

  double sum() const { return x + y + z; }
};

}  // namespace resilience
