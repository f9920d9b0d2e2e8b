use crate::error::{Error, Result};
use crate::model::PurchaseModel;
use crate::multinomial::{decide, DecisionOutcome};
use crate::scalar::{self, Scalar};
use crate::similarity::dice_sphere;
use crate::vector::{ProfitVector, RatingVector};

/// Brute-force maximizer of expected profit over the Dice ball, for `n <= 3`.
///
/// Scans the ball's surface by angle (one angle for `n = 2`, polar and
/// azimuth for `n = 3`) plus a coarse lattice of interior shells and the
/// customer's own ratings. A point counts only if every entry is nonnegative,
/// its Dice similarity is at least `tau - 1e-9` when re-evaluated from scratch,
/// and, with [`GridSearch::respect_cap`], every entry is at most `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSearch {
    resolution: usize,
    respect_cap: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridMax<T> {
    pub point: RatingVector<T>,
    pub profit: T,
    /// Feasible points evaluated.
    pub evaluated: usize,
}

impl GridSearch {
    pub const MAX_DIM: usize = 3;
    pub const MIN_RESOLUTION: usize = 1_000;

    pub fn new(resolution: usize) -> Result<Self> {
        if resolution < Self::MIN_RESOLUTION {
            return Err(Error::InvalidConfig(format!(
                "grid resolution must be at least {}, got {resolution}",
                Self::MIN_RESOLUTION
            )));
        }
        Ok(Self {
            resolution,
            respect_cap: false,
        })
    }

    /// Also require entries `<= m`.
    pub fn respect_cap(mut self, yes: bool) -> Self {
        self.respect_cap = yes;
        self
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn run<T: Scalar>(
        &self,
        c: &RatingVector<T>,
        p: &ProfitVector<T>,
        tau: T,
        model: PurchaseModel,
    ) -> Result<GridMax<T>> {
        let m = c.max_rating();
        let pv = p.values();
        self.maximize(c, p.len(), tau, |r: &[T]| {
            if self.respect_cap && r.iter().any(|&x| x > m) {
                return None;
            }
            let num = scalar::dot(pv, r);
            match model {
                PurchaseModel::Linear => Some(num / m),
                PurchaseModel::Multinomial => {
                    let total: T = r.iter().copied().sum();
                    (total > T::zero()).then(|| num / total)
                }
            }
        })
    }

    /// Maximizes an arbitrary objective over the feasible grid. `objective`
    /// returns `None` for points it rejects.
    pub fn maximize<T, F>(
        &self,
        c: &RatingVector<T>,
        n_profits: usize,
        tau: T,
        objective: F,
    ) -> Result<GridMax<T>>
    where
        T: Scalar,
        F: Fn(&[T]) -> Option<T>,
    {
        c.check_len(n_profits)?;
        let n = c.len();
        if n > Self::MAX_DIM {
            return Err(Error::DimensionTooLarge {
                n,
                max: Self::MAX_DIM,
            });
        }
        let sphere = dice_sphere(c, tau)?;
        let radius = sphere.radius();
        let cv = c.values();
        let cc = c.norm_sq();
        let floor = tau - T::BOUNDARY_TOL;

        let mut best: Option<(Vec<T>, T)> = None;
        let mut evaluated = 0usize;
        let mut point = vec![T::zero(); n];
        let mut consider = |dir: &[T], scale: T| {
            for i in 0..n {
                point[i] = sphere.center[i] + scale * radius * dir[i];
            }
            if point.iter().any(|&x| x < T::zero()) {
                return;
            }
            let cr = scalar::dot(cv, &point);
            let similarity = (cr + cr) / (cc + scalar::norm_sq(&point));
            if similarity < floor {
                return;
            }
            let Some(value) = objective(&point) else {
                return;
            };
            evaluated += 1;
            let better = match &best {
                None => true,
                Some((bp, bv)) => value > *bv || (value == *bv && lex_less(&point, bp)),
            };
            if better {
                best = Some((point.clone(), value));
            }
        };

        // The customer's own ratings are always feasible.
        let to_c: Vec<T> = sphere
            .center
            .iter()
            .zip(cv)
            .map(|(&o, &x)| {
                if radius > T::zero() {
                    (x - o) / radius
                } else {
                    T::zero()
                }
            })
            .collect();
        consider(&to_c, T::one());

        let shells = [0.0, 0.25, 0.5, 0.75].map(T::lit);
        for_each_direction(n, self.resolution, |d| consider(d, T::one()))?;
        for &s in &shells {
            for_each_direction(n, Self::MIN_RESOLUTION, |d| consider(d, s))?;
        }

        let (point, profit) = best.ok_or(Error::NoFeasibleWitness)?;
        Ok(GridMax {
            point: RatingVector::unbounded(point, c.max_rating())?,
            profit,
            evaluated,
        })
    }
}

/// Grid maximum of expected profit over the Dice ball.
pub fn grid_max_on_sphere<T: Scalar>(
    c: &RatingVector<T>,
    p: &ProfitVector<T>,
    tau: T,
    model: PurchaseModel,
    resolution: usize,
) -> Result<GridMax<T>> {
    GridSearch::new(resolution)?.run(c, p, tau, model)
}

fn lex_less<T: Scalar>(a: &[T], b: &[T]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

/// Unit directions covering the sphere in dimension `n <= 3`, roughly
/// `count` of them.
fn for_each_direction<T: Scalar>(n: usize, count: usize, mut f: impl FnMut(&[T])) -> Result<()> {
    let tau = T::TAU();
    match n {
        1 => {
            f(&[T::one()]);
            f(&[-T::one()]);
        }
        2 => {
            let step = tau / T::lit(count as f64);
            for k in 0..count {
                let (s, c) = (step * T::lit(k as f64)).sin_cos();
                f(&[c, s]);
            }
        }
        3 => {
            let polar = ((count as f64) / 2.0).sqrt().ceil().max(2.0) as usize;
            let azimuth = 2 * polar;
            let dpolar = T::PI() / T::lit(polar as f64);
            let daz = tau / T::lit(azimuth as f64);
            for j in 0..=polar {
                let (st, ct) = (dpolar * T::lit(j as f64)).sin_cos();
                let ring = if j == 0 || j == polar { 1 } else { azimuth };
                for k in 0..ring {
                    let (sp, cp) = (daz * T::lit(k as f64)).sin_cos();
                    f(&[st * cp, st * sp, ct]);
                }
            }
        }
        n => {
            return Err(Error::DimensionTooLarge {
                n,
                max: GridSearch::MAX_DIM,
            })
        }
    }
    Ok(())
}

/// The closed-form decision answer next to a brute-force answer that respects
/// nonnegativity, for measuring how often the closed-form rule says "no" while
/// a feasible point exists.
#[derive(Debug, Clone, PartialEq)]
pub struct StrictDecision<T> {
    pub closed_form: DecisionOutcome<T>,
    pub grid_best: GridMax<T>,
    pub grid_feasible: bool,
}

impl<T: Scalar> StrictDecision<T> {
    /// Closed form said "no" but the grid found a point reaching `V`.
    pub fn is_gap(&self) -> bool {
        !self.closed_form.feasible && self.grid_feasible
    }
}

pub fn decide_strict<T: Scalar>(
    c: &RatingVector<T>,
    p: &ProfitVector<T>,
    tau: T,
    v: T,
    resolution: usize,
) -> Result<StrictDecision<T>> {
    let closed_form = decide(c, p, tau, v)?;
    let grid_best = grid_max_on_sphere(c, p, tau, PurchaseModel::Multinomial, resolution)?;
    let grid_feasible = grid_best.profit >= v;
    Ok(StrictDecision {
        closed_form,
        grid_best,
        grid_feasible,
    })
}
