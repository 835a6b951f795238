#pragma once

namespace supercasimir {

// CODATA 2018 (exact SI definitions of h, e, k_B, c). Energies are carried in
// eV, lengths in nm, temperatures in K and pressures in Pa throughout; every
// conversion goes through this record.
struct PhysicalConstants {
  static constexpr double hbar_eV_s = 6.582119569509066e-16;
  static constexpr double kB_eV_per_K = 8.617333262145179e-5;
  static constexpr double c_nm_per_s = 2.99792458e17;
  static constexpr double hbar_c_eV_nm = 197.3269804593025;
  static constexpr double pascal_per_eV_nm3 = 1.602176634e8;
  static constexpr double pi = 3.141592653589793238462643383279502884;

  // Photon energy hbar*xi (eV) of the l-th Matsubara frequency at temperature T.
  static constexpr double matsubara_energy(long l, double T_K) {
    return 2.0 * pi * static_cast<double>(l) * kB_eV_per_K * T_K;
  }

  static constexpr double rad_per_s_to_eV(double xi) { return hbar_eV_s * xi; }
  static constexpr double eV_to_rad_per_s(double e) { return e / hbar_eV_s; }
};

}  // namespace supercasimir
