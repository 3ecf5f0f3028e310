#pragma once

#include "oamwalk/crystal_registry.hpp"
#include "oamwalk/dispersion.hpp"
#include "oamwalk/grid.hpp"
#include "oamwalk/pump.hpp"
#include "oamwalk/units.hpp"

namespace oamwalk::test {

inline const CrystalRegistry& registry() {
  static const CrystalRegistry r = CrystalRegistry::load(default_registry_path());
  return r;
}

inline CrystalConfig collinear_bbo(double length_mm = 3.0) {
  CrystalConfig c;
  c.sellmeier = registry().get("BBO");
  c.theta = deg_to_rad(32.914);
  c.length_m = mm_to_m(length_mm);
  return c;
}

inline CrystalConfig noncollinear_bbo(double length_mm = 3.0) {
  CrystalConfig c = collinear_bbo(length_mm);
  c.theta = deg_to_rad(39.935);
  c.geometry = Geometry::NonCollinear;
  return c;
}

inline PumpConfig gaussian_pump(double rho_deg = 0.0, double waist_um = 200.0) {
  PumpConfig p;
  p.waist_m = um_to_m(waist_um);
  p.walkoff_rho = deg_to_rad(rho_deg);
  return p;
}

}  // namespace oamwalk::test
