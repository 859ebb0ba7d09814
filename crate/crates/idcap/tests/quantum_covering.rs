//! Fixed-input quantum soft covering: sampled M-types over a state's
//! eigenbasis must reach the covering guarantee computed from the CQ
//! sandwiched Rényi mutual information.

use idcap::channels::depolarize;
use idcap::info_measures::cq_sandwiched_mi;
use idcap::pauli_bloch::DensityMatrix;
use idcap::rng::seeded;
use idcap::soft_covering::{covering_rhs, low_rank_cover, sufficient_m};

#[test]
fn low_rank_cover_beats_covering_rhs_at_n2() {
    let mut rng = seeded(808);
    let alpha = 1.5;
    let (p, m) = (0.5, 16usize);
    for _ in 0..3 {
        let rho = DensityMatrix::random(4, &mut rng);
        // CQ state over the eigenbasis of ρ: X ~ spectrum, B = N(eigenvector)
        let (vals, vecs) = rho.eigen_decomposition();
        let outputs: Vec<DensityMatrix> = vecs
            .iter()
            .map(|v| depolarize(&DensityMatrix::from_pure(v).unwrap(), p).unwrap())
            .collect();
        let mi = cq_sandwiched_mi(&vals, &outputs, alpha).unwrap();
        let rhs = covering_rhs(alpha, mi, m as u64).unwrap();
        let cover = low_rank_cover(&rho, p, m, 0.0, 1000, 99).unwrap();
        assert!(
            cover.achieved_td <= rhs,
            "achieved {:.4} > rhs {:.4} (mi {:.4})",
            cover.achieved_td,
            rhs,
            mi
        );
        assert_eq!(cover.mtype.m(), m as u64);
    }
}

#[test]
fn sufficient_m_from_cq_mi_reaches_target() {
    let mut rng = seeded(809);
    let alpha = 1.5;
    let p = 0.5;
    let eps = 0.25;
    let rho = DensityMatrix::random(4, &mut rng);
    let (vals, vecs) = rho.eigen_decomposition();
    let outputs: Vec<DensityMatrix> = vecs
        .iter()
        .map(|v| depolarize(&DensityMatrix::from_pure(v).unwrap(), p).unwrap())
        .collect();
    let mi = cq_sandwiched_mi(&vals, &outputs, alpha).unwrap();
    let m = sufficient_m(alpha, eps, mi).unwrap();
    let cover = low_rank_cover(&rho, p, m as usize, eps, 1000, 7).unwrap();
    assert!(
        cover.achieved_td <= eps,
        "achieved {:.4} > eps {eps} with M = {m}",
        cover.achieved_td
    );
}
