//! Parsed form of a `.gsm` document: named declarations plus a task list.

use gsm_core::Scalar;

#[derive(Debug, Clone)]
pub struct Document {
    pub decls: Vec<Decl>,
    pub tasks: Vec<Task>,
}

#[derive(Debug, Clone)]
pub struct Decl {
    pub name: String,
    pub line: usize,
    pub kind: DeclKind,
}

#[derive(Debug, Clone)]
pub enum DeclKind {
    Groupoid(GroupoidDecl),
    Subgroupoid {
        parent: String,
        spec: SubgroupoidSpec,
    },
    Algebra {
        groupoid: String,
        /// (basis name, degree morphism name)
        basis: Vec<(String, String)>,
        /// (left factor, right factor, value)
        mult: Vec<(String, String, LinComb)>,
        unit: LinComb,
    },
    Action(ActionDecl),
    Biset {
        g_action: String,
        k_action: String,
    },
    Module {
        algebra: String,
        side: ModuleSide,
        dim: usize,
        /// (algebra basis name, matrix)
        acts: Vec<(String, Vec<Vec<Scalar>>)>,
    },
}

#[derive(Debug, Clone)]
pub enum GroupoidDecl {
    Pair(usize),
    Group(Vec<Vec<usize>>),
    Union(String, String),
    Explicit {
        objects: Vec<String>,
        /// (name, dom, ran)
        morphisms: Vec<(String, String, String)>,
        /// (object, identity morphism)
        identities: Vec<(String, String)>,
        /// (morphism, inverse)
        inverses: Vec<(String, String)>,
        /// (g, h, gh)
        compositions: Vec<(String, String, String)>,
    },
}

#[derive(Debug, Clone)]
pub enum SubgroupoidSpec {
    All,
    Identities,
    Members(Vec<String>),
}

#[derive(Debug, Clone)]
pub enum ActionDecl {
    Left(String),
    Right(String, Option<String>),
    Explicit {
        groupoid: String,
        points: Vec<String>,
        /// (object, points)
        fibers: Vec<(String, Vec<String>)>,
        /// (morphism, point, image)
        maps: Vec<(String, String, String)>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleSide {
    Left,
    Right,
}

/// Linear combination of named basis elements; empty means zero.
#[derive(Debug, Clone, Default)]
pub struct LinComb(pub Vec<(Scalar, String)>);

#[derive(Debug, Clone)]
pub struct Task {
    pub line: usize,
    pub kind: TaskKind,
}

#[derive(Debug, Clone)]
pub enum BisetRef {
    Named(String),
    Pair(String, String),
}

#[derive(Debug, Clone)]
pub enum TaskKind {
    Check(String),
    Orbits(String),
    Smash { algebra: String, action: String },
    Duality { algebra: String, biset: BisetRef },
    CosetDuality { algebra: String, groupoid: String, subgroupoid: String },
    IgDuality { algebra: String, action: String },
    WeakHopf { algebra: String },
    Morita { algebra: String, action: String, point: String },
}

impl TaskKind {
    pub fn name(&self) -> &'static str {
        match self {
            TaskKind::Check(_) => "check",
            TaskKind::Orbits(_) => "orbits",
            TaskKind::Smash { .. } => "smash",
            TaskKind::Duality { .. } => "duality",
            TaskKind::CosetDuality { .. } => "coset-duality",
            TaskKind::IgDuality { .. } => "ig-duality",
            TaskKind::WeakHopf { .. } => "weakhopf",
            TaskKind::Morita { .. } => "morita",
        }
    }
}
