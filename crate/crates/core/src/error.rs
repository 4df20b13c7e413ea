use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LabError {
    #[error("element is central (imaginary norm {imag_norm:.3e}); variation undefined")]
    CentralElement { imag_norm: f64 },

    #[error("syntax error at position {pos}: unexpected {found:?}")]
    Syntax { pos: usize, found: String },

    #[error("word uses generator {index} but the representation has {arity}")]
    Arity { index: usize, arity: usize },

    #[error("twist {twist} is not defined on surface {surface}")]
    Domain { surface: String, twist: String },

    #[error("degenerate ellipse: {reason}")]
    DegenerateEllipse { reason: String },

    #[error("orbit blew up at step {step}: Fricke residual {residual:.3e}")]
    OrbitBlowUp { step: usize, residual: f64 },

    #[error("series diverges for k = {k} (needs k >= 4)")]
    DivergentSeries { k: u32 },

    #[error("quadrature for n = {n} gave {value}, not near -1, 0 or 1")]
    QuadratureUnresolved { n: u32, value: f64 },

    #[error("window too tight: acceptance {acceptance:.3e} in trial batch")]
    WindowTooTight { acceptance: f64 },

    #[error("integer overflow in polynomial arithmetic")]
    Overflow,

    #[error("automorphism certificate failed for {name}")]
    NotAutomorphism { name: String },

    #[error("config error in field `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("{0}")]
    Invalid(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for LabError {
    fn from(e: std::io::Error) -> Self {
        LabError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, LabError>;
