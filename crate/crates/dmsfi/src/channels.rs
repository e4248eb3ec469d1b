//! Molecular channel data: ionization potentials, structure coefficients
//! C_{lm'}, dipole couplings, orientation rotation into the lab frame, and
//! the lab-frame structure amplitude B_0.

use ndarray::Array2;
use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::laser::LaserField;
use crate::specialfn::{q_factor, small_d};
use crate::units;

/// One ionic state (hole channel).
#[derive(Debug, Clone)]
pub struct Channel {
    pub label: String,
    /// Ionization potential, a.u.
    pub e_ip: f64,
    /// Gerade (+1) / ungerade (-1); used in the coherence sign analysis.
    pub parity: i8,
    /// Residual ion charge.
    pub z: f64,
    /// Structure coefficients (l, m', C_{lm'}) of the ionizing orbital.
    pub clm: Vec<(i32, i32, f64)>,
    /// The other member of a degenerate Pi+/Pi- pair, if any.
    pub degeneracy_partner: Option<String>,
}

impl Channel {
    pub fn kappa(&self) -> f64 {
        (2.0 * self.e_ip).sqrt()
    }

    /// Lab-frame structure amplitude B_0 at orientation Euler angles
    /// (0, theta, 0), z-y-z extrinsic, for the given sign of the field:
    ///
    ///   B_0 = sum_{l m'} sgn[-F]^l C_{lm'} d^l_{0 m'}(theta) Q(l, 0)
    ///
    /// Real because the Euler alpha and gamma angles vanish and C_{lm'} is
    /// real. Pi channels give 0 at theta = 0.
    pub fn b0(&self, theta: f64, field_sign: f64) -> f64 {
        let s = if field_sign > 0.0 { -1.0 } else { 1.0 };
        let mut tot = 0.0;
        for &(l, mp, c) in &self.clm {
            let sgn = if l % 2 == 0 { 1.0 } else { s };
            tot += sgn * c * small_d(l, 0, mp, theta) * q_factor(l, 0).expect("|0| <= l");
        }
        tot
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClmEntry {
    l: i32,
    m: i32,
    c: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChannelSpec {
    label: String,
    e_ip_ev: f64,
    parity: i8,
    #[serde(default = "default_z")]
    z: f64,
    clm: Vec<ClmEntry>,
    #[serde(default)]
    degeneracy_partner: Option<String>,
}

fn default_z() -> f64 {
    1.0
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DipoleSpec {
    from: String,
    to: String,
    d: [f64; 3],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MoleculeSpec {
    name: String,
    channels: Vec<ChannelSpec>,
    #[serde(default)]
    dipoles: Vec<DipoleSpec>,
}

/// Channel list plus the dipole-coupling matrix (molecular frame, a.u.).
#[derive(Debug, Clone)]
pub struct MoleculeModel {
    pub name: String,
    pub channels: Vec<Channel>,
    /// (i, j, d) with i < j; d_ji = d_ij (real vectors).
    pub dipoles: Vec<(usize, usize, [f64; 3])>,
}

impl MoleculeModel {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let spec: MoleculeSpec = toml::from_str(text)
            .map_err(|e| Error::Config(format!("molecule file: {e}")))?;
        let channels: Vec<Channel> = spec
            .channels
            .iter()
            .map(|c| {
                if c.e_ip_ev <= 0.0 {
                    return Err(Error::Config(format!(
                        "channel {}: ionization potential must be > 0",
                        c.label
                    )));
                }
                if c.clm.is_empty() {
                    return Err(Error::Config(format!(
                        "channel {}: needs at least one C_lm",
                        c.label
                    )));
                }
                Ok(Channel {
                    label: c.label.clone(),
                    e_ip: units::ev_to_au(c.e_ip_ev),
                    parity: c.parity,
                    z: c.z,
                    clm: c.clm.iter().map(|e| (e.l, e.m, e.c)).collect(),
                    degeneracy_partner: c.degeneracy_partner.clone(),
                })
            })
            .collect::<Result<_>>()?;
        let index = |label: &str| {
            channels
                .iter()
                .position(|c| c.label == label)
                .ok_or_else(|| Error::Config(format!("dipole references unknown channel {label}")))
        };
        let mut dipoles = Vec::new();
        for d in &spec.dipoles {
            let i = index(&d.from)?;
            let j = index(&d.to)?;
            let (i, j, v) = if i < j {
                (i, j, d.d)
            } else {
                (j, i, d.d)
            };
            dipoles.push((i, j, v));
        }
        Ok(Self {
            name: spec.name,
            channels,
            dipoles,
        })
    }

    /// Bundled molecule data ("h", "n2", "co2").
    pub fn builtin(name: &str) -> Result<Self> {
        let text = match name.to_ascii_lowercase().as_str() {
            "h" => include_str!("../data/h.toml"),
            "n2" => include_str!("../data/n2.toml"),
            "co2" => include_str!("../data/co2.toml"),
            other => {
                return Err(Error::Config(format!(
                    "unknown builtin molecule '{other}' (have: h, n2, co2)"
                )))
            }
        };
        Self::from_toml_str(text)
    }

    pub fn builtin_names() -> &'static [&'static str] {
        &["h", "n2", "co2"]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.channels.iter().position(|c| c.label == label)
    }

    pub fn len(&self) -> usize {
        self.channels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.channels.is_empty()
    }

    /// z (lab, polarization axis) component of a molecular-frame dipole
    /// vector after the (0, theta, 0) orientation rotation.
    pub fn dipole_lab_z(d: [f64; 3], theta: f64) -> f64 {
        -d[0] * theta.sin() + d[2] * theta.cos()
    }

    /// H_ii = E_i, H_ij = -d_ij . F(t) z_hat with the molecule at angle theta.
    pub fn hamiltonian_at(
        &self,
        field: &LaserField,
        theta: f64,
        t: f64,
        include_dipoles: bool,
    ) -> Array2<Complex64> {
        let n = self.channels.len();
        let mut h = Array2::zeros((n, n));
        for (i, c) in self.channels.iter().enumerate() {
            h[(i, i)] = Complex64::new(c.e_ip, 0.0);
        }
        if include_dipoles {
            let f = field.field_at(t);
            for &(i, j, d) in &self.dipoles {
                let v = Complex64::new(-Self::dipole_lab_z(d, theta) * f, 0.0);
                h[(i, j)] += v;
                h[(j, i)] += v;
            }
        }
        h
    }

    /// Degeneracy groups for reporting: Pi+/Pi- partners are summed into one
    /// entry named by their common stem ("A+", "A-" -> "A").
    pub fn population_groups(&self) -> Vec<(String, Vec<usize>)> {
        let mut groups: Vec<(String, Vec<usize>)> = Vec::new();
        for (i, c) in self.channels.iter().enumerate() {
            let stem = match &c.degeneracy_partner {
                Some(_) => c.label.trim_end_matches(['+', '-']).to_string(),
                None => c.label.clone(),
            };
            if let Some(g) = groups.iter_mut().find(|(name, _)| *name == stem) {
                g.1.push(i);
            } else {
                groups.push((stem, vec![i]));
            }
        }
        groups
    }
}
