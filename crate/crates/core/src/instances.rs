//! Ready-made modules used by the certificates: imaginary Verma modules,
//! generalized loop modules and the Levi-Verma ⊗ Fock tensor inductions.

use std::sync::Arc;

use crate::algebra::{AffineAlgebra, CartanType, Generator};
use crate::error::Result;
use crate::induced::{induce, InducedModule, Splitting};
use crate::module::{CharacterModule, FockModule, HighestWeight, Setting, TensorModule, TriangularSpec, Truncation, WeightModule};
use crate::partitions::{natural_parabolic, ImaginarySpec, ParabolicSubalgebra};
use crate::rational::Q;

/// Natural parabolic for `omega` and the setting using its adapted frame.
pub fn parabolic_setting(t: CartanType, omega: &[usize], spec: ImaginarySpec, level: i64) -> Result<(ParabolicSubalgebra, Arc<Setting>)> {
    let alg = AffineAlgebra::new(t);
    let p = natural_parabolic(&alg, omega, spec, level)?;
    let setting = Setting::new(alg, p.frame.clone());
    Ok((p, setting))
}

/// Imaginary Verma module `M_{b̂_nat}(λ) = Ind(C_λ)` for the natural Borel.
pub fn imaginary_verma(t: CartanType, lambda: HighestWeight, trunc: Truncation) -> Result<InducedModule> {
    let (p, setting) = parabolic_setting(t, &[], ImaginarySpec::LeviOnly, i64::from(trunc.depth) + 1)?;
    let base: Arc<dyn WeightModule> = Arc::new(CharacterModule::new(setting, lambda));
    induce(Splitting::Parabolic(p), base, None, trunc)
}

/// `Ind(V)` for `l̂ = G + H` with `V` a Fock module over all of `G`.
pub fn loop_fock(t: CartanType, spec: TriangularSpec, lambda: HighestWeight, trunc: Truncation) -> Result<InducedModule> {
    let (p, setting) = parabolic_setting(t, &[], ImaginarySpec::Full, i64::from(trunc.depth) + 1)?;
    let base: Arc<dyn WeightModule> = Arc::new(FockModule::full(setting, spec, lambda));
    induce(Splitting::Parabolic(p), base, None, trunc)
}

/// Verma module of the Levi factor `l̂⁰` for `omega`, with the lowering
/// generator `first` (if any) leftmost in PBW monomials.
pub fn levi_verma(setting: Arc<Setting>, omega: &[usize], lambda: HighestWeight, first: Option<Generator>, trunc: Truncation) -> Result<InducedModule> {
    let base: Arc<dyn WeightModule> = Arc::new(CharacterModule::new(setting, lambda));
    induce(Splitting::LeviVerma { omega: omega.to_vec() }, base, first, trunc)
}

/// `M ⊗ S` with `M` the `l̂⁰`-Verma module of weight `lambda` (PBW order
/// starting at `first`, if given) and `S` the highest-weight Fock module over
/// `G(l̂)^⊥` at the same charge; returned with its natural parabolic.
pub fn levi_tensor(
    t: CartanType,
    omega: &[usize],
    lambda: HighestWeight,
    first: Option<Generator>,
    trunc: Truncation,
) -> Result<(ParabolicSubalgebra, Arc<InducedModule>, Arc<dyn WeightModule>, Arc<dyn WeightModule>)> {
    let (p, setting) = parabolic_setting(t, omega, ImaginarySpec::Full, i64::from(trunc.depth) + 1)?;
    let m = Arc::new(levi_verma(setting.clone(), &p.omega, lambda.clone(), first, trunc)?);
    let mut s_hw = HighestWeight::zero(setting.alg.rank());
    s_hw.c = lambda.c.clone();
    let s: Arc<dyn WeightModule> = Arc::new(FockModule::perp(setting, TriangularSpec::Standard, s_hw));
    let v: Arc<dyn WeightModule> = Arc::new(TensorModule::new(m.clone(), s.clone())?);
    Ok((p, m, s, v))
}

/// `Ind(M ⊗ S)` for the tensor module of [`levi_tensor`].
pub fn levi_tensor_fock(t: CartanType, omega: &[usize], lambda: HighestWeight, trunc: Truncation) -> Result<InducedModule> {
    let (p, _, _, v) = levi_tensor(t, omega, lambda, None, trunc)?;
    induce(Splitting::Parabolic(p), v, None, trunc)
}

/// `Ind(L(a))` for `l̂ = G' + H`, `G'` spanned by the listed oscillator
/// indices at every level, `L(a)` the highest-weight Fock module over `G'`.
pub fn partial_heisenberg(t: CartanType, oscillators: &[usize], lambda: HighestWeight, trunc: Truncation) -> Result<InducedModule> {
    let level = i64::from(trunc.depth) + 1;
    let include = (1..=64).flat_map(|k| oscillators.iter().map(move |&j| (k, j))).collect();
    let (p, setting) = parabolic_setting(t, &[], ImaginarySpec::Oscillators { include }, level)?;
    let base: Arc<dyn WeightModule> =
        Arc::new(FockModule::new(setting, oscillators.to_vec(), TriangularSpec::Standard, lambda));
    induce(Splitting::Parabolic(p), base, None, trunc)
}

/// `λ` with the given values on `h_i`, `λ(d) = 0` and charge `a`.
pub fn weight(h: Vec<Q>, a: Q) -> HighestWeight {
    HighestWeight::new(h, Q::default(), a)
}
