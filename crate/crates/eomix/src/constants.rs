//! Physical constants (SI units).

/// Speed of light in vacuum (m/s).
pub const C_LIGHT: f64 = 299_792_458.0;

/// Reduced Planck constant (J·s).
pub const HBAR: f64 = 1.054_571_817e-34;

/// Vacuum permittivity (F/m).
pub const EPSILON_0: f64 = 8.854_187_8128e-12;

/// Default optical carrier: 2π · 193.41 THz, the 1550 nm telecom line (rad/s).
pub const OMEGA0_TELECOM: f64 = 2.0 * std::f64::consts::PI * 193.41e12;
