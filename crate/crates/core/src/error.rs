use core::fmt;

/// Errors raised while building or using a [`Field`](crate::field::Field).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldError {
    DegreeOutOfRange(u32),
    BadPolynomial { m: u32, poly: u32 },
    Reducible { m: u32, poly: u32 },
    ZeroInversion,
    NotASubfield { n: u32, k: u32 },
    Syntax,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::DegreeOutOfRange(m) => write!(f, "extension degree {m} outside 2..=16"),
            FieldError::BadPolynomial { m, poly } => {
                write!(f, "polynomial {poly:#x} is not a degree-{m} polynomial with constant term")
            }
            FieldError::Reducible { m, poly } => write!(f, "polynomial {poly:#x} of degree {m} is reducible"),
            FieldError::ZeroInversion => write!(f, "zero has no multiplicative inverse"),
            FieldError::NotASubfield { n, k } => write!(f, "GF(2^{k}) is not a subfield of GF(2^{n})"),
            FieldError::Syntax => write!(f, "expected field text form m=<int>[,poly=0x<hex>]"),
        }
    }
}

impl core::error::Error for FieldError {}

/// Errors from cyclotomic integer arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycError {
    LevelMismatch { left: u32, right: u32 },
    Syntax,
}

impl fmt::Display for CycError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycError::LevelMismatch { left, right } => {
                write!(f, "cyclotomic level mismatch: {left} vs {right}")
            }
            CycError::Syntax => write!(f, "expected cyclotomic text form K=<int>;[c0,c1,...]"),
        }
    }
}

impl core::error::Error for CycError {}

/// Errors from Boolean, generalized and vectorial function operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FnError {
    /// Table length is not `2^n` or an entry is out of range.
    BadTable,
    /// The operation requires a different flavor (multivariate, univariate, bivariate).
    FlavorMismatch,
    NotBent,
    NotGbent,
    /// The transform parameter `c` must be nonzero.
    ZeroC,
    ZeroDirection,
    IndexOutOfRange { index: u32, k: u32 },
    KTooSmall(u32),
    OddN(u32),
    /// The bilinear form of a quadratic has a nontrivial radical.
    DegenerateForm,
    /// The input is not quadratic (the recovered affine equivalence does not hold).
    NotQuadratic,
    DimensionMismatch,
    SpanContainsOne,
    DependentAlphas,
    Field(FieldError),
}

impl fmt::Display for FnError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FnError::BadTable => write!(f, "truth table has the wrong length or out-of-range entries"),
            FnError::FlavorMismatch => write!(f, "operation not defined for this function flavor"),
            FnError::NotBent => write!(f, "function is not bent"),
            FnError::NotGbent => write!(f, "function is not gbent"),
            FnError::ZeroC => write!(f, "transform parameter c must be nonzero"),
            FnError::ZeroDirection => write!(f, "derivative direction must be nonzero"),
            FnError::IndexOutOfRange { index, k } => write!(f, "bit index {index} out of range for k = {k}"),
            FnError::KTooSmall(k) => write!(f, "k = {k} is too small (need k >= 2)"),
            FnError::OddN(n) => write!(f, "n = {n} must be even"),
            FnError::DegenerateForm => write!(f, "bilinear form is degenerate"),
            FnError::NotQuadratic => write!(f, "function is not quadratic"),
            FnError::DimensionMismatch => write!(f, "dimensions do not match"),
            FnError::SpanContainsOne => write!(f, "span of the multipliers contains 1"),
            FnError::DependentAlphas => write!(f, "multipliers are linearly dependent"),
            FnError::Field(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for FnError {}

impl From<FieldError> for FnError {
    fn from(e: FieldError) -> Self {
        FnError::Field(e)
    }
}

/// Errors from the twisted groups and partitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupError {
    VariantMismatch,
    NotAPartition,
    WrongPartCount { expected: usize, found: usize },
    Fn(FnError),
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::VariantMismatch => write!(f, "group variant does not match the function"),
            GroupError::NotAPartition => write!(f, "parts are not a partition of the space"),
            GroupError::WrongPartCount { expected, found } => {
                write!(f, "expected {expected} parts besides U, found {found}")
            }
            GroupError::Fn(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for GroupError {}

impl From<FnError> for GroupError {
    fn from(e: FnError) -> Self {
        GroupError::Fn(e)
    }
}

/// Errors from the construction families. Variants name the violated precondition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionError {
    /// Exponent fails its coprimality or involution requirement.
    BadExponent,
    /// Multipliers fail a distinctness or root-of-unity requirement.
    BadAlphas(&'static str),
    /// `h_1(pi_1^-1 y) + ... + h_4(pi_4^-1 y) = 0` fails.
    HConditionFailed,
    /// `c_1^-e + c_2^-e + c_3^-e = (c_1 + c_2 + c_3)^-e` fails (or a `c` is degenerate).
    ConditionFailed(&'static str),
    DependentAlphas,
    SizeMismatch,
    NotAPermutation,
    FieldTooSmall(u32),
    /// The constructed object failed its own verification.
    PostconditionFailed(&'static str),
    Fn(FnError),
    Group(GroupError),
    Field(FieldError),
}

impl ConstructionError {
    /// Short name of the violated clause, for diagnostics.
    pub fn clause(&self) -> &'static str {
        match self {
            ConstructionError::BadExponent => "exponent condition",
            ConstructionError::BadAlphas(c) => c,
            ConstructionError::HConditionFailed => "h compatibility condition",
            ConstructionError::ConditionFailed(c) => c,
            ConstructionError::DependentAlphas => "linear independence",
            ConstructionError::SizeMismatch => "domain size",
            ConstructionError::NotAPermutation => "bijectivity",
            ConstructionError::FieldTooSmall(_) => "m >= 3",
            ConstructionError::PostconditionFailed(c) => c,
            ConstructionError::Fn(_) => "function precondition",
            ConstructionError::Group(_) => "partition precondition",
            ConstructionError::Field(_) => "field precondition",
        }
    }
}

impl fmt::Display for ConstructionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionError::FieldTooSmall(m) => write!(f, "construction requires m >= 3, got {m}"),
            ConstructionError::PostconditionFailed(c) => write!(f, "postcondition failed: {c}"),
            ConstructionError::Fn(e) => write!(f, "{e}"),
            ConstructionError::Group(e) => write!(f, "{e}"),
            ConstructionError::Field(e) => write!(f, "{e}"),
            other => write!(f, "precondition violated: {}", other.clause()),
        }
    }
}

impl core::error::Error for ConstructionError {}

impl From<FnError> for ConstructionError {
    fn from(e: FnError) -> Self {
        match e {
            FnError::DependentAlphas => ConstructionError::DependentAlphas,
            other => ConstructionError::Fn(other),
        }
    }
}

impl From<GroupError> for ConstructionError {
    fn from(e: GroupError) -> Self {
        ConstructionError::Group(e)
    }
}

impl From<FieldError> for ConstructionError {
    fn from(e: FieldError) -> Self {
        ConstructionError::Field(e)
    }
}
