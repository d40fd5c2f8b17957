use flagconf::flags::FlagError;
use flagconf::invariants::InvariantError;
use flagconf::realforms::RealFormError;
use flagconf::schema::SchemaError;
use flagconf::semistability::SemistabilityError;
use flagconf::triangulation::TriangulationError;
use serde_json::{json, Value};

/// Exit status 1: the input is well formed but mathematically rejected.
pub const DOMAIN: u8 = 1;
/// Exit status 2: the input or the command line is malformed.
pub const PARSE: u8 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub exit: u8,
    pub code: &'static str,
    pub message: String,
}

impl Failure {
    pub fn domain(code: &'static str, message: impl Into<String>) -> Self {
        Self { exit: DOMAIN, code, message: message.into() }
    }

    pub fn parse(code: &'static str, message: impl Into<String>) -> Self {
        Self { exit: PARSE, code, message: message.into() }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "code": self.code, "message": self.message } })
    }
}

fn flag_code(e: &FlagError) -> &'static str {
    match e {
        FlagError::NotSemistable => "not-semistable",
        FlagError::WrongKind { .. } | FlagError::WrongCount { .. } => "wrong-kind",
        FlagError::TooLarge { .. } => "too-large",
        _ => "degenerate-input",
    }
}

fn invariant_code(e: &InvariantError) -> &'static str {
    match e {
        InvariantError::Flag(f) => flag_code(f),
        InvariantError::NotSemistable => "not-semistable",
        InvariantError::NonGeneric(_) => "non-generic",
        InvariantError::UndefinedRatio { .. } => "undefined-ratio",
        InvariantError::WrongCount { .. } | InvariantError::WrongSpace { .. } => "wrong-kind",
        InvariantError::IdentityViolated(_) => "identity-violated",
        InvariantError::Numeric(_) | InvariantError::Derangement(_) => "non-generic",
    }
}

fn realform_code(e: &RealFormError) -> &'static str {
    match e {
        RealFormError::Flag(f) => flag_code(f),
        RealFormError::Invariant(i) => invariant_code(i),
        RealFormError::NotIsotropic(_) => "not-isotropic",
        RealFormError::NotSemistable => "not-semistable",
        RealFormError::WrongSignature { .. } => "wrong-signature",
        RealFormError::VanishingPairing => "vanishing-pairing",
        RealFormError::EvenCount(_) | RealFormError::Shape { .. } => "wrong-kind",
        _ => "degenerate-input",
    }
}

impl From<SchemaError> for Failure {
    fn from(e: SchemaError) -> Self {
        let code = match &e {
            SchemaError::Json(_) => "invalid-json",
            SchemaError::Scalar { .. } => "invalid-scalar",
            SchemaError::UnknownKind(_) => "unknown-kind",
            SchemaError::Shape { .. } | SchemaError::Numeric(_) => "invalid-shape",
            SchemaError::Flag { .. } => "invalid-flag",
            SchemaError::Form(_) => "invalid-form",
            SchemaError::Triangulation(_) => "invalid-triangulation",
        };
        Failure::parse(code, e.to_string())
    }
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Self {
        Failure::domain(invariant_code(&e), e.to_string())
    }
}

impl From<FlagError> for Failure {
    fn from(e: FlagError) -> Self {
        Failure::domain(flag_code(&e), e.to_string())
    }
}

impl From<RealFormError> for Failure {
    fn from(e: RealFormError) -> Self {
        Failure::domain(realform_code(&e), e.to_string())
    }
}

impl From<SemistabilityError> for Failure {
    fn from(e: SemistabilityError) -> Self {
        let code = match &e {
            SemistabilityError::Flag(f) => flag_code(f),
            SemistabilityError::NotIsotropic(_) => "not-isotropic",
            SemistabilityError::Shape { .. } | SemistabilityError::TooSmall { .. } => "wrong-kind",
            _ => "degenerate-input",
        };
        Failure::domain(code, e.to_string())
    }
}

impl From<TriangulationError> for Failure {
    fn from(e: TriangulationError) -> Self {
        match &e {
            TriangulationError::UnknownPath(_) => Failure::parse("unknown-path", e.to_string()),
            TriangulationError::UnknownEdge(_) => Failure::parse("unknown-edge", e.to_string()),
            TriangulationError::Invariant(i) => Failure::domain(invariant_code(i), e.to_string()),
            TriangulationError::NotAdjacent { .. } => Failure::parse("invalid-path", e.to_string()),
            _ => Failure::domain("not-equivalent", e.to_string()),
        }
    }
}
