use hodge_core::domain::{
    describe_domain, flag_in_period_domain, hermitian_form, hodge_flag, project_to_symmetric_space, FormMode,
};
use hodge_core::linalg::{gauss, int, rat, real};
use hodge_core::sampling::{self, SuiteRng};
use hodge_core::{HodgeNumbers, Matrix};
use rand::Rng;

#[test]
fn descriptor_ranks_add_up() {
    for ranks in HodgeNumbers::enumerate_up_to(8) {
        let d = describe_domain(&ranks);
        let total = d.horizontal_rank + d.vertical_rank;
        assert!(total <= d.dim_du, "{ranks}");
        assert_eq!(total == d.dim_du, ranks.k() <= 2, "{ranks}");
        assert_eq!(d.p + d.q, ranks.total());
    }
}

#[test]
fn base_flag_lies_in_the_domain() {
    for ranks in HodgeNumbers::enumerate_up_to(8) {
        let m = flag_in_period_domain(&hodge_flag(&ranks));
        assert!(m.in_domain, "{ranks}: {m:?}");
    }
}

/// A random element of `U(p) × U(q)` composed with hyperbolic rotations
/// `[[5/4, 3/4], [3/4, 5/4]]` between a positive and a negative coordinate.
fn random_unitary(ranks: &HodgeNumbers, rng: &mut SuiteRng) -> Matrix {
    let (p, m) = (ranks.p(), ranks.total());
    let mut g = Matrix::identity(m);
    let phases = [int(1), int(-1), gauss(0, 1), gauss(0, -1)];
    for _ in 0..4 {
        let step = match rng.gen_range(0..3) {
            0 => {
                let mut d = Matrix::identity(m);
                let c = rng.gen_range(0..m);
                d[(c, c)] = phases[rng.gen_range(0..4)].clone();
                d
            }
            1 => {
                // 3-4-5 rotation inside one signature block.
                let (lo, hi) = if rng.gen_bool(0.5) { (0, p) } else { (p, m) };
                let mut r = Matrix::identity(m);
                if hi - lo >= 2 {
                    let a = rng.gen_range(lo..hi - 1);
                    let (c, s) = (real(rat(3, 5)), real(rat(4, 5)));
                    r[(a, a)] = c.clone();
                    r[(a + 1, a + 1)] = c;
                    r[(a, a + 1)] = -s.clone();
                    r[(a + 1, a)] = s;
                }
                r
            }
            _ => {
                let mut r = Matrix::identity(m);
                let (a, b) = (rng.gen_range(0..p), rng.gen_range(p..m));
                let (ch, sh) = (real(rat(5, 4)), real(rat(3, 4)));
                r[(a, a)] = ch.clone();
                r[(b, b)] = ch;
                r[(a, b)] = sh.clone();
                r[(b, a)] = sh;
                r
            }
        };
        g = &step * &g;
    }
    g
}

#[test]
fn membership_is_unitary_invariant() {
    let tuples = HodgeNumbers::enumerate_up_to(5);
    for case in 0..100u64 {
        let mut rng = sampling::stream(11, "domain-unitary", case);
        let ranks = &tuples[rng.gen_range(0..tuples.len())];
        let h = hermitian_form(ranks);
        let g = random_unitary(ranks, &mut rng);
        assert_eq!(&(&g.adjoint() * &h) * &g, h, "not h-unitary");
        // A flag inside D and one (possibly) outside it.
        let inside = hodge_flag(ranks);
        let shear = random_shear(ranks.total(), &mut rng);
        let other = inside.transform(&shear).unwrap();
        for f in [inside, other] {
            let before = flag_in_period_domain(&f).in_domain;
            let after = flag_in_period_domain(&f.transform(&g).unwrap()).in_domain;
            assert_eq!(before, after, "case {case}, ranks {ranks}");
        }
    }
}

fn random_shear(m: usize, rng: &mut SuiteRng) -> Matrix {
    let mut s = Matrix::identity(m);
    let (a, b) = (rng.gen_range(0..m), rng.gen_range(0..m));
    if a != b {
        s[(a, b)] = sampling::small_gauss(rng, 2);
    }
    s
}

#[test]
fn symmetric_space_projection_is_positive() {
    let tuples = HodgeNumbers::enumerate_up_to(5);
    for case in 0..100u64 {
        let mut rng = sampling::stream(12, "domain-project", case);
        let ranks = &tuples[rng.gen_range(0..tuples.len())];
        let flag = hodge_flag(ranks).transform(&random_unitary(ranks, &mut rng)).unwrap();
        assert!(flag_in_period_domain(&flag).in_domain);
        let plane = project_to_symmetric_space(&flag, FormMode::Indefinite).unwrap();
        assert_eq!((plane.rows(), plane.cols()), (ranks.total(), ranks.p()));
        let h = hermitian_form(ranks);
        let gram = &(&plane.adjoint() * &h) * &plane;
        assert_eq!(gram.hermitian_positive_definite(), Some(true), "case {case}");
    }
}
