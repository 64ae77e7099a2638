//! Polyadically quantized signals `X(t) = A f(t)` sampled on a uniform grid.
//!
//! All arithmetic is over exact rationals. A sine is evaluated only where its
//! value is rational (0, +-1/2, +-1); other grid points are reported as
//! [`Error::NonRationalSample`] on synthesis.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Int;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WaveKind {
    Sine,
    Triangular,
    Rectangular,
}

impl FromStr for WaveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sine" => Ok(Self::Sine),
            "triangular" => Ok(Self::Triangular),
            "rectangular" => Ok(Self::Rectangular),
            _ => Err(Error::Parse(format!("unknown waveform species {s:?}"))),
        }
    }
}

impl fmt::Display for WaveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Sine => "sine",
            Self::Triangular => "triangular",
            Self::Rectangular => "rectangular",
        })
    }
}

/// A unit-peak periodic waveform; `index` is the entry it carries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaveformSpecies<T: Int> {
    pub index: u32,
    pub kind: WaveKind,
    frequency: Ratio<T>,
    phase: Ratio<T>,
}

impl<T: Int> WaveformSpecies<T> {
    pub fn new(index: u32, kind: WaveKind, frequency: Ratio<T>, phase: Ratio<T>) -> Result<Self> {
        if index < 1 {
            return Err(Error::InvalidParams("species index starts at 1".into()));
        }
        if frequency <= Ratio::zero() {
            return Err(Error::InvalidParams(format!("frequency {frequency} must be positive")));
        }
        if phase < Ratio::zero() || phase >= Ratio::one() {
            return Err(Error::InvalidParams(format!("phase {phase} outside [0,1)")));
        }
        Ok(Self { index, kind, frequency, phase })
    }

    /// Unit frequency, zero phase.
    pub fn unit(index: u32, kind: WaveKind) -> Self {
        Self::new(index, kind, Ratio::one(), Ratio::zero()).expect("unit species is valid")
    }

    pub fn frequency(&self) -> &Ratio<T> {
        &self.frequency
    }

    pub fn phase(&self) -> &Ratio<T> {
        &self.phase
    }

    /// `f(t)`, or `None` where the value is irrational.
    pub fn value_at(&self, t: &Ratio<T>) -> Option<Ratio<T>> {
        let x = self.frequency.clone() * t.clone() + self.phase.clone();
        let p = x.fract();
        let p = if p < Ratio::zero() { p + Ratio::one() } else { p };
        let r = |n: i64, d: i64| Ratio::new(T::from_small(n), T::from_small(d));
        match self.kind {
            WaveKind::Rectangular => Some(if p < r(1, 2) { Ratio::one() } else { -Ratio::one() }),
            WaveKind::Triangular => {
                let four = r(4, 1);
                Some(if p <= r(1, 4) {
                    four * p
                } else if p <= r(3, 4) {
                    r(2, 1) - four * p
                } else {
                    four * p - r(4, 1)
                })
            }
            WaveKind::Sine => {
                let twelfths = p * r(12, 1);
                if !twelfths.is_integer() {
                    return None;
                }
                match twelfths.to_integer().to_i64()? {
                    0 | 6 => Some(Ratio::zero()),
                    1 | 5 => Some(r(1, 2)),
                    3 => Some(Ratio::one()),
                    7 | 11 => Some(r(-1, 2)),
                    9 => Some(-Ratio::one()),
                    _ => None,
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledSignal<T: Int> {
    pub species: WaveformSpecies<T>,
    /// Samples per unit time.
    pub rate: u64,
    pub samples: Vec<Ratio<T>>,
}

impl<T: Int> SampledSignal<T> {
    /// Time of sample `k`.
    pub fn time(&self, k: usize) -> Ratio<T> {
        sample_time(k as u64, self.rate)
    }

    /// `time,value` rows with exact fractions.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("time,value\n");
        for (k, s) in self.samples.iter().enumerate() {
            out.push_str(&format!("{},{}\n", self.time(k), s));
        }
        out
    }
}

fn sample_time<T: Int>(k: u64, rate: u64) -> Ratio<T> {
    Ratio::new(T::from_u64(k).unwrap(), T::from_u64(rate).unwrap())
}

/// Samples `A f(t)` at `t = k / rate` for all `t < duration`.
pub fn synthesize<T: Int>(
    species: &WaveformSpecies<T>,
    amplitude: &T,
    duration: &Ratio<T>,
    rate: u64,
) -> Result<SampledSignal<T>> {
    let rate_r = Ratio::from_integer(T::from_u64(rate).unwrap());
    let nyquist = species.frequency.clone() * Ratio::from_integer(T::from_small(2));
    if rate == 0 || rate_r < nyquist {
        return Err(Error::RateTooLow { rate: rate.to_string(), frequency: species.frequency.to_string() });
    }
    if *duration <= Ratio::zero() {
        return Err(Error::InvalidParams(format!("duration {duration} must be positive")));
    }
    let amp = Ratio::from_integer(amplitude.clone());
    let mut samples = Vec::new();
    let mut k = 0u64;
    loop {
        let t = sample_time::<T>(k, rate);
        if t >= *duration {
            break;
        }
        let w = species.value_at(&t).ok_or_else(|| Error::NonRationalSample(t.to_string()))?;
        samples.push(amp.clone() * w);
        k += 1;
    }
    Ok(SampledSignal { species: species.clone(), rate, samples })
}

/// Recovers the integer amplitude from exact samples, assuming `species`.
pub fn recover_amplitude<T: Int>(signal: &SampledSignal<T>, species: &WaveformSpecies<T>) -> Result<T> {
    let mut ratio: Option<Ratio<T>> = None;
    let mut forced_zero = false;
    for (k, s) in signal.samples.iter().enumerate() {
        let t = signal.time(k);
        match species.value_at(&t) {
            // A times an irrational is rational only for A = 0
            None if s.is_zero() => forced_zero = true,
            None => return Err(Error::SpeciesMismatch(format!("sample {k} is rational where the waveform is not"))),
            Some(w) if w.is_zero() => {
                if !s.is_zero() {
                    return Err(Error::SpeciesMismatch(format!("sample {k} nonzero at a waveform zero")));
                }
            }
            Some(w) => {
                let q = s.clone() / w;
                match &ratio {
                    Some(prev) if *prev != q => {
                        return Err(Error::SpeciesMismatch(format!("sample {k} gives amplitude {q}, earlier {prev}")));
                    }
                    Some(_) => {}
                    None => ratio = Some(q),
                }
            }
        }
    }
    let q = ratio.ok_or(Error::DegenerateGrid)?;
    if forced_zero && !q.is_zero() {
        return Err(Error::SpeciesMismatch("samples vanish where the waveform is irrational".into()));
    }
    if !q.is_integer() {
        return Err(Error::SpeciesMismatch(format!("amplitude {q} is not an integer")));
    }
    Ok(q.to_integer())
}
