use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the engine can report. `code()` gives the stable
/// machine-readable name used in CLI reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} does not fit in 31 bits")]
    ModulusTooLarge(u64),
    #[error("invalid variable name {0:?}")]
    InvalidVariable(String),
    #[error("unknown variable {name:?} at byte {offset}")]
    UnknownVariable { name: String, offset: usize },
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("exponent overflow (exponents are limited to {})", u16::MAX)]
    ExponentOverflow,
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("Gröbner basis computation exceeded the budget of {0} S-pairs")]
    BudgetExceeded(usize),
    #[error("colon by the zero ideal")]
    ZeroColonDivisor,
    #[error("the ideal is the unit ideal")]
    UnitIdeal,
    #[error("quotient is not Artinian: no pure power of {0} among the leading monomials")]
    NotArtinian(String),
    #[error("element is zero in the quotient ring")]
    ZeroElement,
    #[error("characteristic 2 is not allowed here")]
    EvenCharacteristic,
    #[error("characteristic {0} is odd; this check is for p = 2")]
    OddCharacteristic(u32),
    #[error("{0} is not a nonzerodivisor")]
    NotNzd(String),
    #[error("not a regular sequence: {0}")]
    NotRegularSequence(String),
    #[error("socle dimension is {0}, expected 1")]
    TypeNotOne(usize),
    #[error("socle lift failed: {0}")]
    InjectivityFailure(String),
    #[error("input assumption violated: {0}")]
    InputAssumptionViolation(String),
    #[error("cover elements belong to different contexts")]
    ContextMismatch,
    #[error("element {0} is not in the ideal")]
    NotInIdeal(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::ModulusTooLarge(_) => "ModulusTooLarge",
            Error::InvalidVariable(_) => "InvalidVariable",
            Error::UnknownVariable { .. } => "UnknownVariable",
            Error::Syntax { .. } => "SyntaxError",
            Error::ExponentOverflow => "ExponentOverflow",
            Error::RingMismatch => "RingMismatch",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::ZeroColonDivisor => "ZeroColonDivisor",
            Error::UnitIdeal => "UnitIdeal",
            Error::NotArtinian(_) => "NotArtinian",
            Error::ZeroElement => "ZeroElement",
            Error::EvenCharacteristic => "EvenCharacteristic",
            Error::OddCharacteristic(_) => "OddCharacteristic",
            Error::NotNzd(_) => "NotNZD",
            Error::NotRegularSequence(_) => "NotRegularSequence",
            Error::TypeNotOne(_) => "TypeNotOne",
            Error::InjectivityFailure(_) => "InjectivityFailure",
            Error::InputAssumptionViolation(_) => "InputAssumptionViolation",
            Error::ContextMismatch => "ContextMismatch",
            Error::NotInIdeal(_) => "NotInIdeal",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}
