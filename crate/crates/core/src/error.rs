use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("negative transition frequency {0} eV; orient the transition downward")]
    NegativeFrequency(f64),

    #[error("darkness ratio undefined: energy gap and coupling both vanish")]
    UndefinedRatio,

    #[error("dark-state coupling diverges for z = 1")]
    DivergentCoupling,

    #[error("rate network is degenerate: state {state} is disconnected from the rest")]
    DegenerateNetwork { state: usize },

    #[error("steady state has no unique null vector: {0}")]
    DegenerateNullSpace(String),

    #[error("voltage undefined: trap populations P_alpha = {p_alpha:e}, P_beta = {p_beta:e}")]
    UndefinedVoltage { p_alpha: f64, p_beta: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid integration settings: {0}")]
    InvalidIntegration(String),

    #[error("benchmark power is zero")]
    ZeroBenchmark,

    #[error("at gamma_alphabeta = {gamma_alphabeta:e} eV: {source}")]
    AtTrappingRate {
        gamma_alphabeta: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("format error: {0}")]
    Format(String),

    /// `line` is 0 for settings given outside a config file.
    #[error("{}", config_message(*.line, .key, .message))]
    Config {
        line: usize,
        key: String,
        message: String,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn config_message(line: usize, key: &str, message: &str) -> String {
    if line == 0 {
        format!("config error, `{key}`: {message}")
    } else {
        format!("config error at line {line}, key `{key}`: {message}")
    }
}

impl Error {
    /// Configuration errors map to exit code 2, everything else to 3.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Config { .. } | Error::InvalidParams(_) | Error::InvalidGrid(_)
        )
    }
}
