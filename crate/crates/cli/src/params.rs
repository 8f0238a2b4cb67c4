//! Schemes, parameters and point evaluation shared by every subcommand.

use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use photon_add_core::analytic::{
    sacs_moment_set, sats_moment_set, InputState, SacsParams, SatsParams,
};
use photon_add_core::bs_scheme::{
    bs_pnd_coherent, bs_thermal_pnd, bs_witnesses_coherent, bs_witnesses_thermal, BsParams,
};
use photon_add_core::ndpa::{ndpa_q1, ndpa_q2, NdpaParams};
use photon_add_core::witness::{self, WitnessResult};
use photon_add_core::MAX_ORDER;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scheme {
    PureSacs,
    PureSats,
    BsCoherent,
    BsThermal,
    NdpaCoherent,
    NdpaThermal,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Self::PureSacs => "pure-sacs",
            Self::PureSats => "pure-sats",
            Self::BsCoherent => "bs-coherent",
            Self::BsThermal => "bs-thermal",
            Self::NdpaCoherent => "ndpa-coherent",
            Self::NdpaThermal => "ndpa-thermal",
        }
    }

    fn is_thermal(self) -> bool {
        matches!(self, Self::PureSats | Self::BsThermal | Self::NdpaThermal)
    }

    fn is_bs(self) -> bool {
        matches!(self, Self::BsCoherent | Self::BsThermal)
    }

    /// Parameters the scheme needs, in report order.
    pub fn required(self) -> &'static [Param] {
        use Param::*;
        match self {
            Self::PureSacs => &[Alpha],
            Self::PureSats => &[Nbar],
            Self::BsCoherent => &[Alpha, Reflectance, Eta, Ps],
            Self::BsThermal => &[Nbar, Reflectance, Eta, Ps],
            Self::NdpaCoherent => &[Alpha, Eta],
            Self::NdpaThermal => &[Nbar, Eta],
        }
    }

    pub fn accepts(self, p: Param) -> bool {
        let p = if p == Param::NbarInv { Param::Nbar } else { p };
        self.required().contains(&p)
    }

    pub fn check_witness(self, w: WitnessChoice) -> Result<(), CliError> {
        match w {
            WitnessChoice::Q1 if self.is_thermal() => Err(CliError::invalid(format!(
                "Q1 is unavailable for {}: the state is phase symmetric",
                self.name()
            ))),
            WitnessChoice::Pnd if !self.is_bs() => Err(CliError::invalid(format!(
                "pnd is only defined for the beam-splitter schemes, not {}",
                self.name()
            ))),
            _ => Ok(()),
        }
    }
}

impl FromStr for Scheme {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        <Self as ValueEnum>::from_str(s, false)
            .map_err(|_| CliError::invalid(format!("unknown scheme `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WitnessChoice {
    Q1,
    Q2,
    Pnd,
}

impl WitnessChoice {
    pub fn name(self) -> &'static str {
        match self {
            Self::Q1 => "q1",
            Self::Q2 => "q2",
            Self::Pnd => "pnd",
        }
    }
}

impl FromStr for WitnessChoice {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        <Self as ValueEnum>::from_str(s, false)
            .map_err(|_| CliError::invalid(format!("unknown witness `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Param {
    Alpha,
    Nbar,
    NbarInv,
    Reflectance,
    Eta,
    Ps,
}

impl Param {
    pub const ALL: [Param; 6] = [
        Param::Alpha,
        Param::Nbar,
        Param::NbarInv,
        Param::Reflectance,
        Param::Eta,
        Param::Ps,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Alpha => "alpha",
            Self::Nbar => "nbar",
            Self::NbarInv => "nbar_inv",
            Self::Reflectance => "reflectance",
            Self::Eta => "eta",
            Self::Ps => "ps",
        }
    }

    /// Sweepable parameters; `nbar` is swept through `nbar_inv`.
    pub fn is_axis(self) -> bool {
        self != Self::Nbar
    }

    /// Checks `value` against the physical range of the parameter.
    pub fn check(self, scheme: Scheme, value: f64) -> Result<(), CliError> {
        let ok = value.is_finite()
            && match self {
                Self::Alpha => value >= 0.0,
                Self::Nbar | Self::NbarInv => value > 0.0,
                Self::Eta if matches!(scheme, Scheme::NdpaCoherent | Scheme::NdpaThermal) => {
                    value > 0.0 && value <= 1.0
                }
                Self::Reflectance | Self::Eta | Self::Ps => (0.0..=1.0).contains(&value),
            };
        if ok {
            return Ok(());
        }
        let range = match self {
            Self::Alpha => "[0, inf)",
            Self::Nbar | Self::NbarInv => "(0, inf)",
            Self::Eta if matches!(scheme, Scheme::NdpaCoherent | Scheme::NdpaThermal) => "(0, 1]",
            _ => "[0, 1]",
        };
        Err(CliError::invalid(format!(
            "{} = {value} is outside {range}",
            self.name()
        )))
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| CliError::invalid(format!("unknown parameter `{s}`")))
    }
}

/// Parameter values for one point; `nbar_inv` is stored as `nbar`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ParamSet {
    pub alpha: Option<f64>,
    pub nbar: Option<f64>,
    pub reflectance: Option<f64>,
    pub eta: Option<f64>,
    pub ps: Option<f64>,
}

impl ParamSet {
    pub fn set(&mut self, p: Param, value: f64) {
        let slot = match p {
            Param::Alpha => &mut self.alpha,
            Param::Nbar => &mut self.nbar,
            Param::NbarInv => {
                self.nbar = Some(1.0 / value);
                return;
            }
            Param::Reflectance => &mut self.reflectance,
            Param::Eta => &mut self.eta,
            Param::Ps => &mut self.ps,
        };
        *slot = Some(value);
    }

    pub fn get(&self, p: Param) -> Option<f64> {
        match p {
            Param::Alpha => self.alpha,
            Param::Nbar => self.nbar,
            Param::NbarInv => self.nbar.map(|n| 1.0 / n),
            Param::Reflectance => self.reflectance,
            Param::Eta => self.eta,
            Param::Ps => self.ps,
        }
    }

    /// Rejects parameters foreign to the scheme and out-of-range values.
    pub fn check_for(&self, scheme: Scheme) -> Result<(), CliError> {
        for p in [
            Param::Alpha,
            Param::Nbar,
            Param::Reflectance,
            Param::Eta,
            Param::Ps,
        ] {
            if let Some(v) = self.get(p) {
                if !scheme.accepts(p) {
                    return Err(CliError::invalid(format!(
                        "{p} is not a parameter of {}",
                        scheme.name()
                    )));
                }
                p.check(scheme, v)?;
            }
        }
        Ok(())
    }

    fn require(&self, p: Param, scheme: Scheme) -> Result<f64, CliError> {
        self.get(p)
            .ok_or_else(|| CliError::invalid(format!("{} needs a value for {p}", scheme.name())))
    }
}

pub fn check_orders(orders: &[u32]) -> Result<(), CliError> {
    if orders.is_empty() {
        return Err(CliError::invalid("at least one order is required"));
    }
    match orders.iter().find(|&&m| m == 0 || m > MAX_ORDER) {
        Some(m) => Err(CliError::invalid(format!(
            "order {m} is outside 1..={MAX_ORDER}"
        ))),
        None => Ok(()),
    }
}

/// One witness evaluation at one order.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub m: u32,
    pub witness: WitnessChoice,
    /// The witness, or the heralding probability for `pnd`.
    pub value: Option<f64>,
    pub detail: Option<WitnessResult>,
    pub p_nd: Option<f64>,
    /// Why `value` is missing.
    pub note: Option<String>,
}

/// Evaluates `witness` at every order for one parameter point.
///
/// Invalid or missing parameters fail the whole call; an order whose
/// witness is undefined yields an evaluation without a value.
pub fn evaluate(
    scheme: Scheme,
    witness: WitnessChoice,
    params: &ParamSet,
    orders: &[u32],
) -> Result<Vec<Evaluation>, CliError> {
    scheme.check_witness(witness)?;
    check_orders(orders)?;
    params.check_for(scheme)?;
    let values: Vec<f64> = scheme
        .required()
        .iter()
        .map(|&p| params.require(p, scheme))
        .collect::<Result<_, _>>()?;
    let point = Point::new(scheme, &values)?;
    let p_nd = point.p_nd()?;
    Ok(orders
        .iter()
        .map(|&m| {
            let computed = match witness {
                WitnessChoice::Pnd => Ok(None),
                WitnessChoice::Q1 => point.q1(m).map(Some),
                WitnessChoice::Q2 => point.q2(m).map(Some),
            };
            let (value, detail, note) = match computed {
                Ok(None) => (p_nd, None, None),
                Ok(Some(r)) => {
                    let note = (!r.defined()).then(|| "denominator below threshold".to_owned());
                    (r.value, Some(r), note)
                }
                Err(e) => (None, None, Some(e.to_string())),
            };
            Evaluation {
                m,
                witness,
                value,
                detail,
                p_nd,
                note,
            }
        })
        .collect())
}

enum Point {
    Sacs(SacsParams),
    Sats(SatsParams),
    Bs(BsParams),
    Ndpa(NdpaParams),
}

impl Point {
    fn new(scheme: Scheme, v: &[f64]) -> Result<Self, CliError> {
        Ok(match scheme {
            Scheme::PureSacs => Self::Sacs(SacsParams::new(v[0])?),
            Scheme::PureSats => Self::Sats(SatsParams::new(v[0])?),
            Scheme::BsCoherent => Self::Bs(BsParams::coherent(v[0], v[1], v[2], v[3])?),
            Scheme::BsThermal => Self::Bs(BsParams::thermal(v[0], v[1], v[2], v[3])?),
            Scheme::NdpaCoherent => Self::Ndpa(NdpaParams::coherent(v[0], v[1])?),
            Scheme::NdpaThermal => Self::Ndpa(NdpaParams::thermal(v[0], v[1])?),
        })
    }

    fn p_nd(&self) -> Result<Option<f64>, CliError> {
        Ok(match self {
            Self::Bs(p) if matches!(p.input(), InputState::Coherent { .. }) => {
                Some(bs_pnd_coherent(p)?)
            }
            Self::Bs(p) => Some(bs_thermal_pnd(p)?),
            _ => None,
        })
    }

    fn q1(&self, m: u32) -> photon_add_core::Result<WitnessResult> {
        match self {
            Self::Sacs(p) => Ok(witness::q1_opt(&sacs_moment_set(p, m)?)),
            Self::Bs(p) => Ok(bs_witnesses_coherent(p, &[m])?[0].q1),
            Self::Ndpa(p) => ndpa_q1(p, m),
            Self::Sats(_) => unreachable!("rejected by check_witness"),
        }
    }

    fn q2(&self, m: u32) -> photon_add_core::Result<WitnessResult> {
        match self {
            Self::Sacs(p) => Ok(witness::q2(&sacs_moment_set(p, m)?)),
            Self::Sats(p) => Ok(witness::q2(&sats_moment_set(p, m)?)),
            Self::Bs(p) => match p.input() {
                InputState::Coherent { .. } => Ok(bs_witnesses_coherent(p, &[m])?[0].q2),
                InputState::Thermal { .. } => Ok(bs_witnesses_thermal(p, &[m])?[0].q2),
            },
            Self::Ndpa(p) => ndpa_q2(p, m),
        }
    }
}

/// Parses a comma-separated order list such as `1,2,3`.
pub fn parse_orders(s: &str) -> Result<Vec<u32>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| CliError::invalid(format!("bad order `{t}` in `{s}`")))
        })
        .collect()
}
