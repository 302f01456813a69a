use std::collections::VecDeque;
use std::ops::Range;

use crate::conjugation::{is_c_normal, Conjugation};
use crate::error::{Error, Result};
use crate::foundation::{
    hermitian_eig_unchecked, kernel_abs, polar_unitary_unchecked, Matrix, ToleranceConfig, Vector,
};
use crate::random;
use crate::scalar::{cr, Real, C};

use super::certificate::{cycle_product, normalized_s, word_trace, ObstructionCertificate, Word};
use super::mspace::{m_space, reduce_with, Reduction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerdictKind {
    Yes,
    No,
    Unknown,
}

/// Stage of the decision procedure that produced the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tier {
    /// `M(A) = {0}`.
    Normal = 0,
    /// Simple spectrum of `|A|` on `M(A)`.
    SimpleSpectrum = 1,
    /// Word traces in `S`, `S*`.
    WordTraces = 2,
    /// Search over symmetric intertwiners.
    Search = 3,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchStats<T> {
    /// Dimension of the space of symmetric intertwiners.
    pub intertwiner_dim: usize,
    pub restarts_run: usize,
    /// Smallest `‖C·A*A·C − AA*‖` seen.
    pub best_residual: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics<T> {
    pub tier: Tier,
    pub m_dim: usize,
    /// `‖C·A*A·C − AA*‖` of the returned witness.
    pub witness_residual: Option<T>,
    /// Acceptance bound `residual_abs·(1+‖A‖²)` for witnesses.
    pub witness_bound: T,
    /// Bound beyond which a modulus or phase mismatch is an obstruction.
    pub gap_bound: T,
    pub words_checked: usize,
    pub search: Option<SearchStats<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GsVerdict<T> {
    pub kind: VerdictKind,
    pub witness: Option<Conjugation<T>>,
    pub certificate: Option<ObstructionCertificate<T>>,
    pub diagnostics: Diagnostics<T>,
}

/// Knobs of the degenerate-spectrum tiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecideOptions {
    pub word_len: usize,
    pub restarts: usize,
    pub iterations: usize,
    pub seed: u64,
    /// Worker threads for the search restarts; the outcome does not depend on it.
    pub jobs: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        Self {
            word_len: 6,
            restarts: 64,
            iterations: 500,
            seed: 0,
            jobs: 1,
        }
    }
}

pub fn decide_gs<T: Real>(a: &Matrix<T>, tol: &ToleranceConfig<T>) -> Result<GsVerdict<T>> {
    decide_gs_with(a, tol, &DecideOptions::default())
}

struct Context<'a, T> {
    a: &'a Matrix<T>,
    red: Reduction<T>,
    /// Lift of the conjugation used on `M(A)^⊥`.
    outside: Matrix<T>,
    diag: Diagnostics<T>,
}

impl<T: Real> Context<'_, T> {
    /// Lifts `u_M` (in `M(A)` frame coordinates) and verifies it end to end.
    fn witness(&self, u_m: &Matrix<T>) -> Result<(Conjugation<T>, T)> {
        let q = &self.red.frame;
        let u = &q.matmul(u_m).matmul(&q.transpose()) + &self.outside;
        let c = Conjugation::from_u_unchecked(u);
        let r = is_c_normal(self.a, &c)?;
        Ok((c, r))
    }

    fn accept(&self, r: T) -> bool {
        r <= self.diag.witness_bound
    }

    fn yes(mut self, c: Conjugation<T>, r: T, tier: Tier) -> GsVerdict<T> {
        self.diag.tier = tier;
        self.diag.witness_residual = Some(r);
        GsVerdict {
            kind: VerdictKind::Yes,
            witness: Some(c),
            certificate: None,
            diagnostics: self.diag,
        }
    }

    fn no(mut self, cert: ObstructionCertificate<T>, tier: Tier) -> GsVerdict<T> {
        self.diag.tier = tier;
        GsVerdict {
            kind: VerdictKind::No,
            witness: None,
            certificate: Some(cert),
            diagnostics: self.diag,
        }
    }
}

/// Decides whether some conjugation `C` satisfies `C·A*A·C = AA*`.
///
/// Everything happens on `M(A)`: off it `|A| = |A*|` and the conjugation of
/// an eigenbasis of `|A|` works. On `M(A)`, with eigenframes `F` of `|A|`
/// and `G` of `|A*|`, the candidates are `u = G·B·Fᵀ` with `B` unitary and
/// block diagonal over eigenvalue clusters, and `u` is symmetric iff `B·X`
/// is, where `X = Fᵀ·conj(G)`, i.e. `X_ij = ⟨fᵢ,gⱼ⟩`.
pub fn decide_gs_with<T: Real>(a: &Matrix<T>, tol: &ToleranceConfig<T>, opts: &DecideOptions) -> Result<GsVerdict<T>> {
    a.validate_operator()?;
    tol.validate()?;
    let n = a.rows();
    let norm = a.norm();
    let m = m_space(a, tol)?;
    let red = reduce_with(a, &m, tol)?;

    let r = &red.complement;
    let outside = if r.cols() > 0 {
        let e = hermitian_eig_unchecked(&r.adjoint().matmul(&red.abs_a).matmul(r).hermitian_part());
        let vr = r.matmul(&e.frame);
        vr.matmul(&vr.transpose())
    } else {
        Matrix::zeros(n, n)
    };
    let diag = Diagnostics {
        tier: Tier::Normal,
        m_dim: m.dim(),
        witness_residual: None,
        witness_bound: tol.scaled(norm * norm),
        gap_bound: T::lit(1e-6) * (T::one() + norm),
        words_checked: 0,
        search: None,
    };
    let ctx = Context { a, red, outside, diag };

    if m.dim() == 0 {
        let (c, r) = ctx.witness(&Matrix::zeros(0, 0))?;
        if ctx.accept(r) {
            return Ok(ctx.yes(c, r, Tier::Normal));
        }
        let mut diag = ctx.diag;
        diag.witness_residual = Some(r);
        return Ok(unknown(diag));
    }

    let ep = hermitian_eig_unchecked(&ctx.red.p_m);
    let eq = hermitian_eig_unchecked(&ctx.red.q_m);
    let cluster_thr = tol.eig_cluster_rel * norm.max(T::one());
    let clusters = ep.clusters(cluster_thr);
    check_spectra(
        &ep.eigenvalues,
        &eq.eigenvalues,
        &clusters,
        &eq.clusters(cluster_thr),
        cluster_thr,
        tol.scaled(norm),
    )?;
    let f = &ep.frame;
    let g = &eq.frame;
    let x = f.transpose().matmul(&g.conj());

    if clusters.iter().all(|c| c.len() == 1) {
        match tier1(&ctx, &ep.eigenvalues, f, g, &x, tol) {
            Tier1::Obstruction(cert) => return Ok(ctx.no(cert, Tier::SimpleSpectrum)),
            Tier1::Phases(alpha) => {
                let d: Vec<C<T>> = alpha;
                let u_m = g.matmul(&Matrix::diag(&d)).matmul(&f.transpose());
                let (c, r) = ctx.witness(&u_m)?;
                if ctx.accept(r) {
                    return Ok(ctx.yes(c, r, Tier::SimpleSpectrum));
                }
            }
        }
    } else {
        let (cert, words) = tier2(a, opts.word_len, &ctx.diag);
        let mut ctx = ctx;
        ctx.diag.words_checked = words;
        if let Some(cert) = cert {
            return Ok(ctx.no(cert, Tier::WordTraces));
        }
        return tier3(ctx, f, g, &x, &clusters, tol, opts);
    }
    tier3(ctx, f, g, &x, &clusters, tol, opts)
}

fn unknown<T: Real>(mut diag: Diagnostics<T>) -> GsVerdict<T> {
    diag.tier = Tier::Search;
    GsVerdict {
        kind: VerdictKind::Unknown,
        witness: None,
        certificate: None,
        diagnostics: diag,
    }
}

/// `A*A` and `AA*` are unitarily similar, so the compressed spectra must
/// match cluster by cluster; a mismatch is numerical breakdown.
fn check_spectra<T: Real>(
    lp: &[T],
    lq: &[T],
    cp: &[Range<usize>],
    cq: &[Range<usize>],
    cluster_thr: T,
    abs_thr: T,
) -> Result<()> {
    let mut gap = T::zero();
    for (a, b) in lp.iter().zip(lq) {
        gap = gap.max((*a - *b).abs());
    }
    if cp != cq || gap > cluster_thr.max(abs_thr) {
        return Err(Error::SpectrumMismatch {
            gap: gap.to_f64_lossy(),
        });
    }
    Ok(())
}

enum Tier1<T> {
    Obstruction(ObstructionCertificate<T>),
    Phases(Vec<C<T>>),
}

/// Simple spectrum: `B = diag(αᵢ)` and symmetry of `B·X` reads
/// `αᵢ·X_ij = αⱼ·X_ji`. The moduli must agree pairwise; the phases are
/// propagated over a maximum-weight spanning forest of the overlap graph and
/// every remaining edge must close consistently.
fn tier1<T: Real>(
    ctx: &Context<'_, T>,
    eigenvalues: &[T],
    f: &Matrix<T>,
    g: &Matrix<T>,
    x: &Matrix<T>,
    tol: &ToleranceConfig<T>,
) -> Tier1<T> {
    let m = x.rows();
    let q = &ctx.red.frame;
    let fa = |i: usize| -> Vector<T> { q.mul_vec(&f.column(i)) };
    let ga = |i: usize| -> Vector<T> { q.mul_vec(&g.column(i)) };
    let gap_bound = ctx.diag.gap_bound;

    let mut worst: Option<(usize, usize, T)> = None;
    for i in 0..m {
        for j in i + 1..m {
            let gap = (x[(i, j)].norm() - x[(j, i)].norm()).abs();
            if worst.is_none_or(|w| gap > w.2) {
                worst = Some((i, j, gap));
            }
        }
    }
    if let Some((i, j, gap)) = worst {
        if gap > gap_bound {
            // Orient so that m₁ = |⟨f_i, g_j⟩| ≥ m₂ = |⟨f_j, g_i⟩|.
            let (i, j) = if x[(i, j)].norm() >= x[(j, i)].norm() {
                (i, j)
            } else {
                (j, i)
            };
            let sq = |s: T| s * s;
            return Tier1::Obstruction(ObstructionCertificate::Modulus {
                eigenvalues: (sq(eigenvalues[i]), sq(eigenvalues[j])),
                f: (fa(i), fa(j)),
                g: (ga(i), ga(j)),
                moduli: (x[(i, j)].norm(), x[(j, i)].norm()),
            });
        }
    }

    let edge_thr = T::lit(10.0) * tol.rank_rel;
    let mut edges: Vec<(usize, usize, T)> = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let w = x[(i, j)].norm().min(x[(j, i)].norm());
            if w > edge_thr {
                edges.push((i, j, w));
            }
        }
    }
    edges.sort_by(|a, b| b.2.partial_cmp(&a.2).unwrap_or(std::cmp::Ordering::Equal));
    // Kruskal for the maximum spanning forest.
    let mut parent_uf: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut non_tree = Vec::new();
    for &(i, j, w) in &edges {
        let (ri, rj) = (find(&mut parent_uf, i), find(&mut parent_uf, j));
        if ri != rj {
            parent_uf[ri] = rj;
            adj[i].push(j);
            adj[j].push(i);
        } else {
            non_tree.push((i, j, w));
        }
    }
    let mut alpha: Vec<Option<C<T>>> = vec![None; m];
    let mut tree_parent: Vec<Option<usize>> = vec![None; m];
    for root in 0..m {
        if alpha[root].is_some() {
            continue;
        }
        alpha[root] = Some(cr(T::one()));
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                if alpha[j].is_none() {
                    let ai = alpha[i].expect("visited");
                    let z = ai * x[(i, j)] / x[(j, i)];
                    alpha[j] = Some(z / cr(z.norm()));
                    tree_parent[j] = Some(i);
                    queue.push_back(j);
                }
            }
        }
    }
    let alpha: Vec<C<T>> = alpha.into_iter().map(|a| a.expect("all visited")).collect();
    for &(i, j, _) in &non_tree {
        let mismatch = (alpha[i] * x[(i, j)] - alpha[j] * x[(j, i)]).norm();
        if mismatch > gap_bound {
            let cycle = tree_cycle(&tree_parent, i, j);
            let fs: Vec<Vector<T>> = cycle.iter().map(|&k| fa(k)).collect();
            let gs: Vec<Vector<T>> = cycle.iter().map(|&k| ga(k)).collect();
            let product = cycle_product(&fs, &gs);
            return Tier1::Obstruction(ObstructionCertificate::PhaseCycle {
                eigenvalues: cycle.iter().map(|&k| eigenvalues[k] * eigenvalues[k]).collect(),
                indices: cycle,
                f: fs,
                g: gs,
                product,
            });
        }
    }
    Tier1::Phases(alpha)
}

/// Vertices of the cycle formed by the tree path `i … j` and the edge `j–i`.
fn tree_cycle(parent: &[Option<usize>], i: usize, j: usize) -> Vec<usize> {
    let path_to_root = |mut k: usize| {
        let mut p = vec![k];
        while let Some(q) = parent[k] {
            p.push(q);
            k = q;
        }
        p
    };
    let pi = path_to_root(i);
    let pj = path_to_root(j);
    let lca = *pi.iter().find(|k| pj.contains(k)).expect("same tree");
    let mut cycle: Vec<usize> = pi.iter().copied().take_while(|&k| k != lca).collect();
    cycle.push(lca);
    let down: Vec<usize> = pj.iter().copied().take_while(|&k| k != lca).collect();
    cycle.extend(down.into_iter().rev());
    cycle
}

/// Necessary condition: with `S = e^{−iπ/4}(A*A + i·AA*)`, any witness
/// commutes with `S`, so `S` is real in the witness's fixed basis and every
/// word trace is real. Returns the first violating word (shortest first).
fn tier2<T: Real>(a: &Matrix<T>, word_len: usize, diag: &Diagnostics<T>) -> (Option<ObstructionCertificate<T>>, usize) {
    let s = normalized_s(a);
    let s_star = s.adjoint();
    let bound = diag.gap_bound * T::lit(a.rows() as f64);
    let mut checked = 0;
    for len in 1..=word_len {
        for bits in 0..(1u64 << len) {
            let w = Word((0..len).map(|k| bits >> k & 1 == 1).collect());
            let t = word_trace(&s, &s_star, &w);
            checked += 1;
            if t.im.abs() > bound {
                return (Some(ObstructionCertificate::WordTrace { word: w, trace: t }), checked);
            }
        }
    }
    (None, checked)
}

/// Coordinates of block-diagonal `B`: `(row, col)` pairs inside each cluster.
fn block_coords(clusters: &[Range<usize>]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for c in clusters {
        for i in c.clone() {
            for j in c.clone() {
                out.push((i, j));
            }
        }
    }
    out
}

/// Orthonormal basis (columns, over `block_coords`) of the symmetric
/// intertwiners `{B block diagonal : B·X = (B·X)ᵀ}`.
fn intertwiner_space<T: Real>(x: &Matrix<T>, coords: &[(usize, usize)], tol: &ToleranceConfig<T>) -> Matrix<T> {
    let m = x.rows();
    let rows = m * (m - 1) / 2;
    let mut k: Matrix<T> = Matrix::zeros(rows.max(1), coords.len());
    let mut r = 0;
    for i in 0..m {
        for j in i + 1..m {
            // (BX)_ij − (BX)_ji = Σ_p B_ip X_pj − Σ_p B_jp X_pi
            for (c, &(row, p)) in coords.iter().enumerate() {
                if row == i {
                    k[(r, c)] = k[(r, c)] + x[(p, j)];
                }
                if row == j {
                    k[(r, c)] = k[(r, c)] - x[(p, i)];
                }
            }
            r += 1;
        }
    }
    let scale = k.norm().max(T::one());
    kernel_abs(&k, T::lit(10.0) * tol.rank_rel * scale).into_frame()
}

fn assemble_b<T: Real>(m: usize, coords: &[(usize, usize)], b: &[C<T>]) -> Matrix<T> {
    let mut out = Matrix::zeros(m, m);
    for (&(i, j), &v) in coords.iter().zip(b) {
        out[(i, j)] = v;
    }
    out
}

/// Unitary polar factor taken cluster block by cluster block.
fn block_polar_factor<T: Real>(b: &Matrix<T>, clusters: &[Range<usize>]) -> Matrix<T> {
    let mut out = Matrix::zeros(b.rows(), b.cols());
    for c in clusters {
        let k = c.len();
        out.set_block(
            c.start,
            c.start,
            &polar_unitary_unchecked(&b.block(c.start, c.start, k, k)),
        );
    }
    out
}

struct RestartOutcome<T> {
    index: usize,
    residual: T,
    u_m: Option<Matrix<T>>,
}

/// One restart: a random element of the intertwiner space, then alternate
/// the block polar factor with orthogonal projection back onto the space.
/// The polar factor of an invertible symmetric intertwiner is already a
/// symmetric unitary intertwiner, so success usually comes at once.
#[allow(clippy::too_many_arguments)]
fn restart<T: Real>(
    ctx: &Context<'_, T>,
    basis: &Matrix<T>,
    coords: &[(usize, usize)],
    f: &Matrix<T>,
    g: &Matrix<T>,
    clusters: &[Range<usize>],
    opts: &DecideOptions,
    index: usize,
) -> Result<RestartOutcome<T>> {
    let m = f.rows();
    let mut r = random::rng(opts.seed.wrapping_add(index as u64));
    let coeffs: Vector<T> = random::vector(&mut r, basis.cols());
    let mut b = assemble_b(m, coords, &basis.mul_vec(&coeffs));
    let mut best = T::infinity();
    let mut best_u = None;
    let mut prev = T::infinity();
    for _ in 0..opts.iterations.max(1) {
        let bu = block_polar_factor(&b, clusters);
        let u_m = g.matmul(&bu).matmul(&f.transpose());
        let (_, res) = ctx.witness(&u_m)?;
        if res < best {
            best = res;
            best_u = Some(u_m);
        }
        if ctx.accept(res) || prev - res < T::lit(1e-12) {
            break;
        }
        prev = res;
        let flat: Vector<T> = coords.iter().map(|&(i, j)| bu[(i, j)]).collect();
        let proj = basis.mul_vec(&basis.adjoint().mul_vec(&flat));
        b = assemble_b(m, coords, &proj);
    }
    Ok(RestartOutcome {
        index,
        residual: best,
        u_m: best_u.filter(|_| ctx.accept(best)),
    })
}

fn tier3<T: Real>(
    mut ctx: Context<'_, T>,
    f: &Matrix<T>,
    g: &Matrix<T>,
    x: &Matrix<T>,
    clusters: &[Range<usize>],
    tol: &ToleranceConfig<T>,
    opts: &DecideOptions,
) -> Result<GsVerdict<T>> {
    let coords = block_coords(clusters);
    let basis = intertwiner_space(x, &coords, tol);
    let mut stats = SearchStats {
        intertwiner_dim: basis.cols(),
        restarts_run: 0,
        best_residual: T::infinity(),
    };
    if basis.cols() == 0 {
        ctx.diag.search = Some(stats);
        return Ok(unknown(ctx.diag));
    }
    let jobs = opts.jobs.max(1).min(opts.restarts.max(1));
    let outcomes: Vec<RestartOutcome<T>> = if jobs == 1 {
        let mut out = Vec::new();
        for i in 0..opts.restarts {
            let o = restart(&ctx, &basis, &coords, f, g, clusters, opts, i)?;
            let done = o.u_m.is_some();
            out.push(o);
            if done {
                break;
            }
        }
        out
    } else {
        // Worker w takes restarts w, w + jobs, …; each stops at its first
        // success, and the lowest successful index wins, as in the serial loop.
        let ctx_ref = &ctx;
        let basis_ref = &basis;
        let coords_ref = &coords;
        let results: Vec<Result<Vec<RestartOutcome<T>>>> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..jobs)
                .map(|w| {
                    s.spawn(move || -> Result<Vec<RestartOutcome<T>>> {
                        let mut out = Vec::new();
                        for i in (w..opts.restarts).step_by(jobs) {
                            let o = restart(ctx_ref, basis_ref, coords_ref, f, g, clusters, opts, i)?;
                            let done = o.u_m.is_some();
                            out.push(o);
                            if done {
                                break;
                            }
                        }
                        Ok(out)
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("search worker panicked"))
                .collect()
        });
        let mut all = Vec::new();
        for r in results {
            all.extend(r?);
        }
        all.sort_by_key(|o| o.index);
        let first_ok = all.iter().position(|o| o.u_m.is_some());
        if let Some(k) = first_ok {
            all.truncate(k + 1);
        }
        all
    };
    stats.restarts_run = outcomes.len();
    stats.best_residual = outcomes.iter().map(|o| o.residual).fold(T::infinity(), |a, b| a.min(b));
    ctx.diag.search = Some(stats);
    if let Some(u_m) = outcomes.iter().find_map(|o| o.u_m.clone()) {
        let (c, r) = ctx.witness(&u_m)?;
        return Ok(ctx.yes(c, r, Tier::Search));
    }
    Ok(unknown(ctx.diag))
}
