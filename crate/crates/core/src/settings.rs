//! Parsers for the measurement-settings file format and spin-direction
//! triples.
//!
//! A settings file holds one measurement setting per line as four
//! whitespace-separated fields `ax ay az theta`; `#` starts a comment and
//! blank lines are skipped. The direction must be a unit vector and the
//! phase one of the two values used by the Bell scheme: `0` or `pi/2`
//! (the literal token or the radian value 1.5707963267948966).
//!
//! Both parsers accept arbitrary untrusted input and never panic.

use std::fmt;

use crate::experiment::MeasurementSetting;
use crate::model::SpinDirection;
use crate::quadrature::HomodynePhase;

/// Tolerance for matching a numeric phase against 0 or π/2.
const PHASE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum SettingsErrorKind {
    FieldCount { found: usize },
    BadNumber { field: &'static str, text: String },
    NotUnit { norm_sqr: f64 },
    BadPhase { text: String },
}

impl fmt::Display for SettingsErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SettingsErrorKind::FieldCount { found } => {
                write!(f, "expected 4 fields `ax ay az theta`, found {found}")
            }
            SettingsErrorKind::BadNumber { field, text } => {
                write!(f, "field `{field}` is not a finite number: `{text}`")
            }
            SettingsErrorKind::NotUnit { norm_sqr } => {
                write!(f, "direction is not a unit vector (|a|² = {norm_sqr})")
            }
            SettingsErrorKind::BadPhase { text } => {
                write!(
                    f,
                    "phase must be `0` or `pi/2` (1.5707963267948966), got `{text}`"
                )
            }
        }
    }
}

/// Parse failure with the 1-based line it occurred on.
#[derive(Debug, Clone, PartialEq)]
pub struct SettingsError {
    pub line: usize,
    pub kind: SettingsErrorKind,
}

impl fmt::Display for SettingsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.kind)
    }
}

impl std::error::Error for SettingsError {}

/// Parses a settings file into measurement settings, in file order.
pub fn parse_settings(input: &str) -> Result<Vec<MeasurementSetting>, SettingsError> {
    let mut settings = Vec::new();
    for (index, raw) in input.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(SettingsError {
                line,
                kind: SettingsErrorKind::FieldCount {
                    found: fields.len(),
                },
            });
        }

        let component = |idx: usize, name: &'static str| -> Result<f64, SettingsError> {
            let value: f64 = fields[idx].parse().map_err(|_| SettingsError {
                line,
                kind: SettingsErrorKind::BadNumber {
                    field: name,
                    text: fields[idx].to_string(),
                },
            })?;
            if !value.is_finite() {
                return Err(SettingsError {
                    line,
                    kind: SettingsErrorKind::BadNumber {
                        field: name,
                        text: fields[idx].to_string(),
                    },
                });
            }
            Ok(value)
        };
        let ax = component(0, "ax")?;
        let ay = component(1, "ay")?;
        let az = component(2, "az")?;

        let spin = SpinDirection::new(ax, ay, az).map_err(|_| SettingsError {
            line,
            kind: SettingsErrorKind::NotUnit {
                norm_sqr: ax * ax + ay * ay + az * az,
            },
        })?;
        let phase = parse_phase(fields[3]).ok_or(SettingsError {
            line,
            kind: SettingsErrorKind::BadPhase {
                text: fields[3].to_string(),
            },
        })?;
        let setting =
            MeasurementSetting::new(spin, phase).expect("phase restricted to 0 or π/2 above");
        settings.push(setting);
    }
    Ok(settings)
}

fn parse_phase(text: &str) -> Option<HomodynePhase> {
    if text == "pi/2" {
        return Some(HomodynePhase::momentum());
    }
    let value: f64 = text.parse().ok()?;
    if value.abs() <= PHASE_TOLERANCE {
        Some(HomodynePhase::position())
    } else if (value - std::f64::consts::FRAC_PI_2).abs() <= PHASE_TOLERANCE {
        Some(HomodynePhase::momentum())
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DirectionError {
    FieldCount { found: usize },
    BadNumber { text: String },
    NotUnit { norm_sqr: f64 },
}

impl fmt::Display for DirectionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DirectionError::FieldCount { found } => {
                write!(
                    f,
                    "expected 3 comma-separated components `ax,ay,az`, found {found}"
                )
            }
            DirectionError::BadNumber { text } => {
                write!(f, "component is not a finite number: `{text}`")
            }
            DirectionError::NotUnit { norm_sqr } => {
                write!(f, "direction is not a unit vector (|a|² = {norm_sqr})")
            }
        }
    }
}

impl std::error::Error for DirectionError {}

/// Parses a comma-separated direction triple `ax,ay,az` into a unit spin
/// direction.
pub fn parse_direction(text: &str) -> Result<SpinDirection, DirectionError> {
    let fields: Vec<&str> = text.split(',').map(str::trim).collect();
    if fields.len() != 3 {
        return Err(DirectionError::FieldCount {
            found: fields.len(),
        });
    }
    let mut parts = [0.0f64; 3];
    for (slot, field) in parts.iter_mut().zip(&fields) {
        let value: f64 = field.parse().map_err(|_| DirectionError::BadNumber {
            text: (*field).to_string(),
        })?;
        if !value.is_finite() {
            return Err(DirectionError::BadNumber {
                text: (*field).to_string(),
            });
        }
        *slot = value;
    }
    SpinDirection::new(parts[0], parts[1], parts[2]).map_err(|_| DirectionError::NotUnit {
        norm_sqr: parts[0] * parts[0] + parts[1] * parts[1] + parts[2] * parts[2],
    })
}
