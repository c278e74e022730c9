//! Parsed form of a catalog entry, prior to resolution against other
//! entries. Polynomials stay symbolic here so that printing and
//! round-trip comparison work without an algebra in hand.

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyAst {
    Sum(Vec<PolyAst>),
    Prod(Vec<PolyAst>),
    Pow(Box<PolyAst>, u32),
    Neg(Box<PolyAst>),
    Gen(String),
    Int(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryKind {
    Algebra,
    Hom,
    Derivation,
    Claim,
    Tower,
    GradedGroup,
}

impl EntryKind {
    pub fn name(self) -> &'static str {
        match self {
            EntryKind::Algebra => "algebra",
            EntryKind::Hom => "hom",
            EntryKind::Derivation => "derivation",
            EntryKind::Claim => "claim",
            EntryKind::Tower => "tower",
            EntryKind::GradedGroup => "graded-group",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawGen {
    pub name: String,
    pub degree: usize,
    pub ext: bool,
    pub block: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawAlgebra {
    pub prime: u8,
    pub gens: Vec<RawGen>,
    pub rels: Vec<PolyAst>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawHom {
    pub source: String,
    pub target: String,
    pub maps: Vec<(String, PolyAst)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawDerivation {
    pub on: String,
    pub maps: Vec<(String, PolyAst)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawClaim {
    pub prime: u8,
    pub gens: Vec<RawGen>,
    pub rels: Vec<PolyAst>,
    pub srels: Vec<PolyAst>,
    pub free: Vec<String>,
    pub tors: Vec<(String, u64)>,
    pub reps: Vec<(String, PolyAst, Option<PolyAst>)>,
    pub wits: Vec<(PolyAst, PolyAst)>,
    pub products: Vec<(String, String, u32, String)>,
    pub modp: Option<String>,
    pub sq1: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawVertexRef {
    Catalog(String),
    Stage(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawHomRef {
    Entry(String),
    Inline(Vec<(String, PolyAst)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawStage {
    pub amalgam: bool,
    pub vertices: Vec<RawVertexRef>,
    pub edge: Option<String>,
    pub homs: [Option<RawHomRef>; 2],
    pub order4: Vec<usize>,
    pub surjective_from: Option<usize>,
    pub identify: Option<String>,
    pub dprods: Vec<(PolyAst, PolyAst, PolyAst)>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTower {
    pub prime: u8,
    pub field_mode: bool,
    pub stages: Vec<RawStage>,
    pub notes: Vec<String>,
    pub expect_claim: Option<String>,
    pub expect_group: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawGroup {
    pub prime: u8,
    pub free: Vec<(usize, usize)>,
    pub tors: Vec<(usize, u64, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawBody {
    Algebra(RawAlgebra),
    Hom(RawHom),
    Derivation(RawDerivation),
    Claim(RawClaim),
    Tower(RawTower),
    Group(RawGroup),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawEntry {
    pub id: String,
    pub kind: EntryKind,
    pub src: String,
    pub errata: Vec<String>,
    pub body: RawBody,
}
