#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polysched/error.hpp"

namespace polysched {

enum class SlotColor : std::uint8_t { Red, Blue, Green, Purple };

// Red: t = 0 mod 3, Blue: t = 1 mod 3, Green: t = 2 mod 6, Purple: t = 5 mod 6.
inline SlotColor slot_color(std::int64_t t) {
    if (t < 0) throw InvalidInput("slot colour of a negative day");
    switch (t % 6) {
    case 0:
    case 3: return SlotColor::Red;
    case 1:
    case 4: return SlotColor::Blue;
    case 2: return SlotColor::Green;
    default: return SlotColor::Purple;
    }
}

using ColorMask = std::uint8_t;

constexpr ColorMask mask_of(SlotColor c) { return static_cast<ColorMask>(1u << static_cast<unsigned>(c)); }
constexpr ColorMask kRed = mask_of(SlotColor::Red);
constexpr ColorMask kBlue = mask_of(SlotColor::Blue);
constexpr ColorMask kGreen = mask_of(SlotColor::Green);
constexpr ColorMask kPurple = mask_of(SlotColor::Purple);
constexpr ColorMask kAnyColor = kRed | kBlue | kGreen | kPurple;

inline bool allows(ColorMask m, SlotColor c) { return (m & mask_of(c)) != 0; }

inline const char* color_name(SlotColor c) {
    switch (c) {
    case SlotColor::Red: return "red";
    case SlotColor::Blue: return "blue";
    case SlotColor::Green: return "green";
    case SlotColor::Purple: return "purple";
    }
    return "?";
}

inline SlotColor parse_color(const std::string& s) {
    for (auto c : {SlotColor::Red, SlotColor::Blue, SlotColor::Green, SlotColor::Purple})
        if (s == color_name(c)) return c;
    throw InvalidInput("unknown slot colour '" + s + "'");
}

inline std::vector<SlotColor> colors_in(ColorMask m) {
    std::vector<SlotColor> out;
    for (auto c : {SlotColor::Red, SlotColor::Blue, SlotColor::Green, SlotColor::Purple})
        if (allows(m, c)) out.push_back(c);
    return out;
}

}  // namespace polysched
