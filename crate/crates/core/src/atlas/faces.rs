use std::collections::BTreeMap;

use num_traits::One;

use super::doc::FaceRef;
use super::AtlasError;
use crate::omega::{is_trajectory_type, Pattern};
use crate::polymodel::poly::q;
use crate::polymodel::{ModelPolynomial, Q};
use crate::strata::{polarize_word, Polarity};

/// One W-cell of a face, listed in u-order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FacePoint {
    /// 1-based cluster of the chart pattern the root comes from.
    pub cluster: usize,
    pub multiplicity: u32,
    pub polarity: Polarity,
    /// Fiber component of the face the point lies on.
    pub component: usize,
}

/// A block side `x_axis = ±δ`, viewed through the roots of the fiber there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub name: String,
    pub axis: usize,
    pub positive: bool,
    pub points: Vec<FacePoint>,
    pub components: usize,
}

impl Face {
    pub fn component_points(&self, c: usize) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&i| self.points[i].component == c)
            .collect()
    }

    /// Cluster word of the side, used to decide whether W-points can be
    /// carried across the block.
    pub fn cluster_word(&self) -> Vec<(usize, u32)> {
        self.points.iter().map(|p| (p.cluster, p.multiplicity)).collect()
    }
}

/// A face, or one fiber component of it, as addressed by a glue line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSelection {
    pub face: usize,
    pub points: Vec<usize>,
    pub components: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartShape {
    pub omega: Pattern,
    pub n: u32,
    /// Components of `W_ω`: one per cluster.
    pub w_components: usize,
    pub faces: Vec<Face>,
}

fn axis_name(n: u32, axis_label: &str, positive: bool) -> String {
    if n == 1 {
        if positive { "right" } else { "left" }.to_string()
    } else {
        format!("{axis_label}{}", if positive { '+' } else { '-' })
    }
}

impl ChartShape {
    pub fn new(omega: &Pattern, n: u32) -> Result<Self, AtlasError> {
        if !is_trajectory_type(omega, n) {
            return Err(AtlasError::IllegalPattern {
                omega: omega.to_string(),
                n,
            });
        }
        let max = omega.max_entry();
        let delta = std::cmp::min(q(1, 4), Q::one() / Q::from_integer((1i64 << max.min(62)).into()));
        let x_axes = ModelPolynomial::parameter_axes(omega);
        let y_axes = (n - omega.reduced_norm()) as usize;
        let mut faces = Vec::new();
        for (a, &(i, k)) in x_axes.iter().enumerate() {
            for positive in [false, true] {
                let value = if positive { delta.clone() } else { -delta.clone() };
                let params: BTreeMap<(usize, usize), Q> = [((i, k), value)].into_iter().collect();
                let model = ModelPolynomial::with_params(omega.clone(), params)?;
                let div = model.divisor()?;
                let word = polarize_word(&div.multiplicities())?;
                let component_of = word.decomposition.component_of();
                let points: Vec<FacePoint> = div
                    .roots
                    .iter()
                    .zip(&word.points)
                    .zip(&component_of)
                    .map(|((r, p), &c)| FacePoint {
                        cluster: r.cluster,
                        multiplicity: p.multiplicity,
                        polarity: p.polarity,
                        component: c,
                    })
                    .collect();
                if points.is_empty() {
                    continue;
                }
                faces.push(Face {
                    name: axis_name(n, &format!("x{i}_{k}"), positive),
                    axis: a,
                    positive,
                    components: word.decomposition.parts.len(),
                    points,
                });
            }
        }
        let core = polarize_word(omega.entries())?;
        let component_of = core.decomposition.component_of();
        for j in 0..y_axes {
            for positive in [false, true] {
                let points = core
                    .points
                    .iter()
                    .zip(&component_of)
                    .enumerate()
                    .map(|(idx, (p, &c))| FacePoint {
                        cluster: idx + 1,
                        multiplicity: p.multiplicity,
                        polarity: p.polarity,
                        component: c,
                    })
                    .collect();
                faces.push(Face {
                    name: axis_name(n, &format!("y{}", j + 1), positive),
                    axis: x_axes.len() + j,
                    positive,
                    components: core.decomposition.parts.len(),
                    points,
                });
            }
        }
        Ok(ChartShape {
            omega: omega.clone(),
            n,
            w_components: omega.len(),
            faces,
        })
    }

    pub fn face_index(&self, name: &str) -> Option<usize> {
        self.faces.iter().position(|f| f.name == name)
    }

    pub fn select(&self, r: &FaceRef) -> Result<FaceSelection, AtlasError> {
        let face = self
            .face_index(&r.face)
            .ok_or_else(|| AtlasError::UnknownFace(r.to_string()))?;
        let f = &self.faces[face];
        match r.segment {
            None => Ok(FaceSelection {
                face,
                points: (0..f.points.len()).collect(),
                components: (0..f.components).collect(),
            }),
            Some(k) if k < f.components => Ok(FaceSelection {
                face,
                points: f.component_points(k),
                components: vec![k],
            }),
            Some(_) => Err(AtlasError::UnknownFace(r.to_string())),
        }
    }
}
