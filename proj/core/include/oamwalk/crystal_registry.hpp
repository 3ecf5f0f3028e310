#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "oamwalk/dispersion.hpp"

namespace oamwalk {

// Named Sellmeier models loaded from a sectioned text file (see
// data/crystals.ini). Entries that carry a phase-matching check are verified
// on load: the collinear degenerate angle at check_pump_nm must land within
// check_tolerance_deg of check_theta_deg.
class CrystalRegistry {
 public:
  static CrystalRegistry load(const std::filesystem::path& path);
  static CrystalRegistry parse(std::istream& in, const std::string& origin = "<registry>");

  const SellmeierModel& get(std::string_view name) const;
  bool contains(std::string_view name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, SellmeierModel, std::less<>> models_;
};

// $OAMWALK_CRYSTAL_REGISTRY, else the source-tree copy, else the installed one.
std::filesystem::path default_registry_path();

}  // namespace oamwalk
