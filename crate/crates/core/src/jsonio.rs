//! JSON wire formats for graphs, objects, morphisms, problems,
//! decompositions and case forests. Graph files list only positive edges;
//! the reverse half-edges are implicit.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fgr::{FgrError, FgrObject};
use crate::graph::{GraphError, LabeledGraph, WhiteheadEdgeSet};
use crate::partition::FoldingMorphism;
use crate::solver::{
    CaseForest, CaseStatus, Derivation, SolverError, SurjectivityProblem, Verdict,
};
use crate::words::{Gen, Letter, LetterPair, Substitution, Word, WordError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Fgr(#[from] FgrError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct EdgeDto {
    pub id: u32,
    pub from: u32,
    pub to: u32,
    pub label: String,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct GraphDto {
    pub vertices: Vec<u32>,
    pub basepoint: u32,
    pub edges: Vec<EdgeDto>,
}

impl GraphDto {
    pub fn from_graph(g: &LabeledGraph) -> GraphDto {
        GraphDto {
            vertices: (0..g.n_vertices()).collect(),
            basepoint: g.basepoint(),
            edges: g
                .positive_edges()
                .enumerate()
                .map(|(id, (from, to, gen))| EdgeDto {
                    id: id as u32,
                    from,
                    to,
                    label: gen.name().to_owned(),
                })
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<LabeledGraph, IoError> {
        let n = self.vertices.len() as u32;
        // vertices may carry arbitrary ids; renumber densely
        let index = |v: u32| -> Result<u32, IoError> {
            self.vertices
                .iter()
                .position(|&x| x == v)
                .map(|p| p as u32)
                .ok_or(IoError::Graph(GraphError::BadId))
        };
        let mut edges = Vec::new();
        for e in &self.edges {
            let letter = Letter::parse_token(&e.label)?;
            let (from, to) = (index(e.from)?, index(e.to)?);
            let (from, to) = if letter.is_positive() {
                (from, to)
            } else {
                (to, from)
            };
            edges.push((from, to, letter.gen()));
        }
        Ok(LabeledGraph::from_edges(n, index(self.basepoint)?, edges)?)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ObjectDto {
    pub generators: Vec<String>,
    pub restrictions: Vec<[String; 2]>,
}

impl ObjectDto {
    pub fn from_object(o: &FgrObject) -> ObjectDto {
        ObjectDto {
            generators: o.generators().iter().map(|g| g.name().to_owned()).collect(),
            restrictions: o
                .restrictions()
                .iter()
                .map(|p| [p.first().token(), p.second().token()])
                .collect(),
        }
    }

    pub fn to_object(&self) -> Result<FgrObject, IoError> {
        let gens = self
            .generators
            .iter()
            .map(|n| Gen::try_new(n))
            .collect::<Result<Vec<_>, _>>()?;
        let mut pairs = Vec::new();
        for [a, b] in &self.restrictions {
            let pair = LetterPair::new(Letter::parse_token(a)?, Letter::parse_token(b)?)
                .ok_or(IoError::Word(WordError::Parse(format!("{a}.{b}"))))?;
            pairs.push(pair);
        }
        Ok(FgrObject::new(gens, WhiteheadEdgeSet::from_pairs(pairs))?)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct MorphismDto {
    pub images: BTreeMap<String, String>,
}

impl MorphismDto {
    pub fn from_map(map: &Substitution) -> MorphismDto {
        MorphismDto {
            images: map
                .iter()
                .map(|(g, w)| (g.name().to_owned(), w.tokens()))
                .collect(),
        }
    }

    pub fn to_map(&self) -> Result<Substitution, IoError> {
        let mut out = Substitution::new();
        for (g, w) in &self.images {
            out.set(Gen::try_new(g)?, Word::parse(w)?);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ProblemDto {
    pub gamma: GraphDto,
    pub delta: GraphDto,
    pub object: ObjectDto,
}

impl ProblemDto {
    pub fn from_problem(p: &SurjectivityProblem) -> ProblemDto {
        ProblemDto {
            gamma: GraphDto::from_graph(p.gamma()),
            delta: GraphDto::from_graph(p.delta()),
            object: ObjectDto::from_object(p.object()),
        }
    }

    pub fn to_problem(&self) -> Result<SurjectivityProblem, IoError> {
        Ok(SurjectivityProblem::new(
            self.gamma.to_graph()?,
            self.delta.to_graph()?,
            self.object.to_object()?,
        )?)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct StepDto {
    pub kind: u8,
    pub edge: [String; 2],
    pub images: BTreeMap<String, String>,
}

impl StepDto {
    pub fn from_folding(f: &FoldingMorphism) -> StepDto {
        StepDto {
            kind: f.kind.index(),
            edge: [f.edge.x.token(), f.edge.y.token()],
            images: MorphismDto::from_map(f.morphism.map()).images,
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct DecompositionDto {
    pub steps: Vec<StepDto>,
    pub residual: MorphismDto,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct NodeDto {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parent: Option<String>,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge: Option<[String; 2]>,
    pub restrictions: Vec<[String; 2]>,
    pub gamma_words: Vec<String>,
    pub delta_words: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ForestDto {
    pub verdict: String,
    pub nodes: Vec<NodeDto>,
}

pub fn forest_to_dto(forest: &CaseForest) -> ForestDto {
    let nodes = forest
        .nodes
        .iter()
        .map(|n| {
            let (status, target, witness) = match &n.status {
                CaseStatus::Negative => ("negative".to_owned(), None, None),
                CaseStatus::StencilPositive => ("stencil-positive".to_owned(), None, None),
                CaseStatus::Ambiguous => ("ambiguous".to_owned(), None, None),
                CaseStatus::BackEdge { target } => (
                    "back-edge".to_owned(),
                    Some(forest.nodes[*target].label.clone()),
                    None,
                ),
                CaseStatus::Equivalent { target, witness } => (
                    "equivalent".to_owned(),
                    Some(forest.nodes[*target].label.clone()),
                    Some(MorphismDto::from_map(witness).images),
                ),
                CaseStatus::ContainedIn { target, witness } => (
                    "contained".to_owned(),
                    Some(forest.nodes[*target].label.clone()),
                    Some(MorphismDto::from_map(witness).images),
                ),
                CaseStatus::Inconclusive => ("inconclusive".to_owned(), None, None),
            };
            let (kind, edge) = match &n.derivation {
                Derivation::Root => (None, None),
                Derivation::Fold { kind, edge, .. } => {
                    (Some(kind.index()), Some([edge.x.token(), edge.y.token()]))
                }
                Derivation::Triangle { added, .. } => (
                    Some(1),
                    Some([added.first().token(), added.second().token()]),
                ),
            };
            NodeDto {
                label: n.label.clone(),
                parent: n.parent.map(|p| forest.nodes[p].label.clone()),
                status,
                target,
                witness,
                kind,
                edge,
                restrictions: ObjectDto::from_object(n.problem.object()).restrictions,
                gamma_words: n
                    .problem
                    .gamma()
                    .spanning_basis()
                    .unwrap_or_default()
                    .iter()
                    .map(|w| w.to_string())
                    .collect(),
                delta_words: n
                    .problem
                    .delta()
                    .spanning_basis()
                    .unwrap_or_default()
                    .iter()
                    .map(|w| w.to_string())
                    .collect(),
            }
        })
        .collect();
    ForestDto {
        verdict: match forest.verdict {
            Verdict::Positive => "positive".to_owned(),
            Verdict::Negative => "negative".to_owned(),
            Verdict::Inconclusive => "inconclusive".to_owned(),
        },
        nodes,
    }
}

/// DOT rendering of a labeled graph, for visual inspection.
pub fn graph_to_dot(g: &LabeledGraph) -> String {
    let mut out = String::from("digraph core {\n  rankdir=LR;\n");
    for v in 0..g.n_vertices() {
        let shape = if v == g.basepoint() {
            "doublecircle"
        } else {
            "circle"
        };
        out.push_str(&format!("  v{v} [shape={shape}];\n"));
    }
    for (from, to, gen) in g.positive_edges() {
        out.push_str(&format!("  v{from} -> v{to} [label=\"{gen}\"];\n"));
    }
    out.push_str("}\n");
    out
}
