use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} lies outside {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("non-finite input to {0}")]
    NonFinite(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no sign change of {family} found on (0, 1)")]
    NoRoot { family: String },

    #[error("inadmissible harmonic pair: {0}")]
    Inadmissible(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::NonFinite(name));
    }
    if !(0.0..1.0).contains(&value) {
        return Err(Error::Domain {
            name,
            value,
            domain: "[0, 1)",
        });
    }
    Ok(())
}

pub(crate) fn check_closed_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::NonFinite(name));
    }
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::Domain {
            name,
            value,
            domain: "[0, 1]",
        });
    }
    Ok(())
}
