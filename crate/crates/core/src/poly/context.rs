use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::monomial::MAX_VARS;

/// Index of a variable inside a [`VariableContext`]. Lower index means a
/// larger variable in every order the engine builds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub usize);

/// Bit set of variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VarSet(pub u64);

impl VarSet {
    pub fn empty() -> Self {
        VarSet(0)
    }

    pub fn with(mut self, v: Var) -> Self {
        self.insert(v);
        self
    }

    pub fn insert(&mut self, v: Var) {
        self.0 |= 1u64 << v.0;
    }

    pub fn contains(&self, v: Var) -> bool {
        self.0 & (1u64 << v.0) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Var> + '_ {
        (0..64).filter(|i| self.0 & (1u64 << i) != 0).map(Var)
    }
}

impl FromIterator<Var> for VarSet {
    fn from_iter<I: IntoIterator<Item = Var>>(iter: I) -> Self {
        let mut s = VarSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

/// Which auxiliary role a non-image variable plays.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuxVar {
    /// World coordinate `q0..q3`.
    World(usize),
    /// Depth `l1..ln` (1-based camera index).
    Depth(usize),
    /// Rabinowitsch variable `t`.
    Rabinowitsch,
    /// Intersection-trick variable `s`.
    Scratch,
}

pub const IMAGE_COORDS: [char; 3] = ['x', 'y', 'z'];

/// Variable layout of `Q[q, l, t, s, p_1, ..., p_n]`.
///
/// Auxiliary variables come first (and are therefore larger), then the image
/// blocks `x_i, y_i, z_i` in camera order. The dehomogenized context has the
/// same layout without the `z_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableContext {
    n_cameras: usize,
    homogeneous: bool,
}

impl VariableContext {
    pub fn new(n_cameras: usize) -> Result<Arc<Self>> {
        Self::build(n_cameras, true)
    }

    fn build(n_cameras: usize, homogeneous: bool) -> Result<Arc<Self>> {
        let ctx = VariableContext {
            n_cameras,
            homogeneous,
        };
        if ctx.nvars() > MAX_VARS {
            return Err(Error::TooManyVariables(ctx.nvars(), MAX_VARS));
        }
        Ok(Arc::new(ctx))
    }

    pub fn n_cameras(&self) -> usize {
        self.n_cameras
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    /// Coordinates per image block: 3 projectively, 2 after dehomogenizing.
    pub fn block_size(&self) -> usize {
        if self.homogeneous {
            3
        } else {
            2
        }
    }

    pub fn n_aux(&self) -> usize {
        4 + self.n_cameras + 2
    }

    pub fn nvars(&self) -> usize {
        self.n_aux() + self.block_size() * self.n_cameras
    }

    /// Image variable `coord` (0 = x, 1 = y, 2 = z) of camera `cam` (0-based).
    pub fn image_var(&self, cam: usize, coord: usize) -> Var {
        assert!(cam < self.n_cameras && coord < self.block_size());
        Var(self.n_aux() + cam * self.block_size() + coord)
    }

    pub fn x(&self, cam: usize) -> Var {
        self.image_var(cam, 0)
    }

    pub fn y(&self, cam: usize) -> Var {
        self.image_var(cam, 1)
    }

    /// Panics in the dehomogenized context.
    pub fn z(&self, cam: usize) -> Var {
        self.image_var(cam, 2)
    }

    pub fn world(&self, i: usize) -> Var {
        assert!(i < 4);
        Var(i)
    }

    /// Depth variable of camera `cam` (0-based).
    pub fn depth(&self, cam: usize) -> Var {
        assert!(cam < self.n_cameras);
        Var(4 + cam)
    }

    pub fn rabinowitsch(&self) -> Var {
        Var(4 + self.n_cameras)
    }

    pub fn scratch(&self) -> Var {
        Var(5 + self.n_cameras)
    }

    /// Camera block of an image variable.
    pub fn block(&self, v: Var) -> Option<usize> {
        if v.0 < self.n_aux() || v.0 >= self.nvars() {
            None
        } else {
            Some((v.0 - self.n_aux()) / self.block_size())
        }
    }

    /// `(camera, coordinate)` of an image variable.
    pub fn image_coords(&self, v: Var) -> Option<(usize, usize)> {
        let cam = self.block(v)?;
        Some((cam, (v.0 - self.n_aux()) % self.block_size()))
    }

    pub fn aux(&self, v: Var) -> Option<AuxVar> {
        let n = self.n_cameras;
        match v.0 {
            i if i < 4 => Some(AuxVar::World(i)),
            i if i < 4 + n => Some(AuxVar::Depth(i - 3)),
            i if i == 4 + n => Some(AuxVar::Rabinowitsch),
            i if i == 5 + n => Some(AuxVar::Scratch),
            _ => None,
        }
    }

    pub fn image_vars(&self) -> impl Iterator<Item = Var> {
        (self.n_aux()..self.nvars()).map(Var)
    }

    pub fn block_vars(&self, cam: usize) -> Vec<Var> {
        (0..self.block_size()).map(|c| self.image_var(cam, c)).collect()
    }

    /// World coordinates and depths, the front block when computing the
    /// multiview ideal by elimination.
    pub fn world_and_depths(&self) -> VarSet {
        (0..4 + self.n_cameras).map(Var).collect()
    }

    pub fn var_name(&self, v: Var) -> String {
        if let Some((cam, c)) = self.image_coords(v) {
            return format!("{}{}", IMAGE_COORDS[c], cam + 1);
        }
        match self.aux(v) {
            Some(AuxVar::World(i)) => format!("q{i}"),
            Some(AuxVar::Depth(i)) => format!("l{i}"),
            Some(AuxVar::Rabinowitsch) => "t".into(),
            Some(AuxVar::Scratch) => "s".into(),
            None => format!("?{}", v.0),
        }
    }

    /// Sort key used when printing the variables of a monomial: image
    /// variables grouped by coordinate letter then camera, auxiliaries after.
    pub(crate) fn print_key(&self, v: Var) -> (usize, usize, usize) {
        match self.image_coords(v) {
            Some((cam, c)) => (0, c, cam),
            None => (1, v.0, 0),
        }
    }

    pub fn parse_var(&self, name: &str) -> Result<Var> {
        let bad = || Error::Parse(format!("unknown variable `{name}`"));
        match name {
            "t" => return Ok(self.rabinowitsch()),
            "s" => return Ok(self.scratch()),
            _ => {}
        }
        let mut chars = name.chars();
        let head = chars.next().ok_or_else(bad)?;
        let idx: usize = chars.as_str().parse().map_err(|_| bad())?;
        match head {
            'q' if idx < 4 => Ok(self.world(idx)),
            'l' if (1..=self.n_cameras).contains(&idx) => Ok(self.depth(idx - 1)),
            'x' | 'y' | 'z' if (1..=self.n_cameras).contains(&idx) => {
                let coord = IMAGE_COORDS.iter().position(|&c| c == head).unwrap();
                if coord >= self.block_size() {
                    return Err(bad());
                }
                Ok(self.image_var(idx - 1, coord))
            }
            _ => Err(bad()),
        }
    }

    /// The context of `Q[x_i, y_i]` that dehomogenization maps into.
    pub fn dehomogenized(&self) -> Arc<Self> {
        Arc::new(VariableContext {
            n_cameras: self.n_cameras,
            homogeneous: false,
        })
    }

    pub fn homogenized(&self) -> Arc<Self> {
        Arc::new(VariableContext {
            n_cameras: self.n_cameras,
            homogeneous: true,
        })
    }
}

impl fmt::Display for VariableContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Q[{} cameras, {}]",
            self.n_cameras,
            if self.homogeneous { "x,y,z" } else { "x,y" }
        )
    }
}
