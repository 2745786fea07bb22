use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // linear algebra
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid abelian group: {0}")]
    InvalidGroup(String),
    #[error("malformed homomorphism: {0}")]
    MalformedHom(String),
    #[error("denominator subgroup is not contained in the numerator")]
    DenominatorNotContained,
    #[error("element does not lie in the numerator subgroup")]
    NotInNumerator,
    #[error("map is not compatible with the subquotients: {0}")]
    NotChainCompatible(String),

    // categories and functors
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("object `{0}` has no identity morphism")]
    MissingIdentity(String),
    #[error("bad identity: {0}")]
    BadIdentity(String),
    #[error("composite `{g} o {f}` has inconsistent domain/codomain")]
    BadCompositionDomain { g: String, f: String },
    #[error("composable pair `{g} o {f}` has no composite")]
    MissingComposite { g: String, f: String },
    #[error("composite `{g} o {f}` is given twice with different values")]
    ConflictingComposite { g: String, f: String },
    #[error("identity law fails: {0}")]
    IdentityLaw(String),
    #[error("composition is not associative on `({h} o {g}) o {f}`")]
    NonAssociative { h: String, g: String, f: String },
    #[error("not a functor: {0}")]
    NotAFunctor(String),
    #[error("invalid subcategory: {0}")]
    InvalidSubcategory(String),
    #[error("functors are not composable or not parallel: {0}")]
    MismatchedFunctors(String),

    // natural systems and pairings
    #[error("missing structure map: {0}")]
    MissingStructureMap(String),
    #[error("natural system is not functorial on the factorization pair {first} then {second}")]
    NotFunctorial { first: String, second: String },
    #[error("malformed pairing: {0}")]
    MalformedPairing(String),
    #[error("pairing violates naturality identity ({identity}) at {witness}")]
    PairingNotNatural { identity: u8, witness: String },

    // cochains and cohomology
    #[error("coboundary squares to a nonzero map in degree {degree}")]
    ComplexBroken { degree: usize },
    #[error("the non-degenerate nerve is unbounded; a maximum degree is required")]
    DegreeCapRequired,
    #[error("degree {degree} is beyond the computed range (top degree {top})")]
    DegreeOutOfRange { degree: usize, top: usize },
    #[error("cup product degree {degree} exceeds the computed range (top degree {top})")]
    DegreeOverflow { degree: usize, top: usize },

    // covers and sectional category
    #[error("pieces do not form a geometric cover: {0}")]
    NotGeometricCover(String),
    #[error("more than {limit} reachable arrow sets; instance too large")]
    SetExplosion { limit: usize },
    #[error("functor is not a bifibration: {0}")]
    NotABifibration(String),

    #[error("unknown bundled instance `{0}`")]
    UnknownInstance(String),
}
