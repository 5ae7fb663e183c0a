//! Batch application of activations over contiguous buffers.
//!
//! Every kernel is a plain elementwise loop over slices, dispatched once per
//! buffer (never per element) so the compiler can vectorize the inner loop.
//! The parallel path splits the buffers into disjoint contiguous chunks and
//! runs the identical per-element code in each, so sequential and parallel
//! execution produce bit-identical output — there is no cross-element
//! arithmetic to reassociate. Nothing here allocates.

use rayon::prelude::*;

use crate::activations::{
    elu, relu, softplus_naive, softplus_stable, squareplus_d1_raw, squareplus_raw, swish,
    Activation, ActivationError,
};
use crate::real::Real;

/// Execution strategy for a kernel call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    /// One thread, in index order.
    Sequential,
    /// Disjoint contiguous chunks on the rayon pool. Falls back to the
    /// sequential loop below [`PAR_MIN_LEN`], where spawn overhead dominates.
    /// Output is bit-identical to [`Exec::Sequential`] in all cases.
    Parallel,
}

/// Buffers shorter than this run sequentially even under [`Exec::Parallel`].
pub const PAR_MIN_LEN: usize = 1 << 16;

/// Chunk length for parallel splitting.
const PAR_CHUNK: usize = 1 << 16;

/// Kernel call errors.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum KernelError {
    #[error("input length {input} != output length {output}")]
    LengthMismatch { input: usize, output: usize },
    #[error(transparent)]
    InvalidActivation(#[from] ActivationError),
    #[error(
        "{activation} ships no closed-form derivative; derivative kernels take squareplus only"
    )]
    DerivativeUnsupported { activation: String },
}

fn check_lens(input: usize, output: usize) -> Result<(), KernelError> {
    if input != output {
        return Err(KernelError::LengthMismatch { input, output });
    }
    Ok(())
}

#[inline]
fn run_unary<T: Real, F>(exec: Exec, input: &[T], output: &mut [T], f: F)
where
    F: Fn(T) -> T + Sync,
{
    if exec == Exec::Sequential || input.len() < PAR_MIN_LEN {
        for (o, &x) in output.iter_mut().zip(input) {
            *o = f(x);
        }
    } else {
        output
            .par_chunks_mut(PAR_CHUNK)
            .zip(input.par_chunks(PAR_CHUNK))
            .for_each(|(oc, ic)| {
                for (o, &x) in oc.iter_mut().zip(ic) {
                    *o = f(x);
                }
            });
    }
}

#[inline]
fn run_unary_in_place<T: Real, F>(exec: Exec, buffer: &mut [T], f: F)
where
    F: Fn(T) -> T + Sync,
{
    if exec == Exec::Sequential || buffer.len() < PAR_MIN_LEN {
        for x in buffer.iter_mut() {
            *x = f(*x);
        }
    } else {
        buffer.par_chunks_mut(PAR_CHUNK).for_each(|c| {
            for x in c.iter_mut() {
                *x = f(*x);
            }
        });
    }
}

#[inline]
fn run_binary_out<T: Real, F>(exec: Exec, input: &[T], out_a: &mut [T], out_b: &mut [T], f: F)
where
    F: Fn(T) -> (T, T) + Sync,
{
    if exec == Exec::Sequential || input.len() < PAR_MIN_LEN {
        for ((a, b), &x) in out_a.iter_mut().zip(out_b.iter_mut()).zip(input) {
            (*a, *b) = f(x);
        }
    } else {
        out_a
            .par_chunks_mut(PAR_CHUNK)
            .zip(out_b.par_chunks_mut(PAR_CHUNK))
            .zip(input.par_chunks(PAR_CHUNK))
            .for_each(|((ac, bc), ic)| {
                for ((a, b), &x) in ac.iter_mut().zip(bc.iter_mut()).zip(ic) {
                    (*a, *b) = f(x);
                }
            });
    }
}

/// Writes `activation(input[i])` to `output[i]`.
///
/// Each `output[i]` is bit-identical to the scalar call on `input[i]`:
/// parameters round into `T` once, then the per-element code is the same.
/// Overlapping in/out aliasing is unrepresentable here; use
/// [`apply_in_place`] for the one-buffer form.
pub fn apply<T: Real>(
    act: &Activation,
    exec: Exec,
    input: &[T],
    output: &mut [T],
) -> Result<(), KernelError> {
    check_lens(input.len(), output.len())?;
    act.validate()?;
    match *act {
        Activation::Squareplus { b } => {
            let b = T::from_f64(b);
            run_unary(exec, input, output, move |x| squareplus_raw(x, b));
        }
        Activation::SoftplusStable => run_unary(exec, input, output, softplus_stable),
        Activation::SoftplusNaive => run_unary(exec, input, output, softplus_naive),
        Activation::Relu => run_unary(exec, input, output, relu),
        Activation::Elu { alpha } => {
            let alpha = T::from_f64(alpha);
            run_unary(exec, input, output, move |x| elu(x, alpha));
        }
        Activation::Swish => run_unary(exec, input, output, swish),
    }
    Ok(())
}

/// Writes the first derivative to `output[i]`. Squareplus only.
pub fn apply_d1<T: Real>(
    act: &Activation,
    exec: Exec,
    input: &[T],
    output: &mut [T],
) -> Result<(), KernelError> {
    check_lens(input.len(), output.len())?;
    act.validate()?;
    match *act {
        Activation::Squareplus { b } => {
            let b = T::from_f64(b);
            run_unary(exec, input, output, move |x| squareplus_d1_raw(x, b));
            Ok(())
        }
        _ => Err(KernelError::DerivativeUnsupported {
            activation: act.name(),
        }),
    }
}

/// Writes value and first derivative in one pass, sharing the square root
/// between them. Bit-identical to running [`apply`] and [`apply_d1`]
/// separately. Squareplus only.
pub fn apply_fused<T: Real>(
    act: &Activation,
    exec: Exec,
    input: &[T],
    out_value: &mut [T],
    out_d1: &mut [T],
) -> Result<(), KernelError> {
    check_lens(input.len(), out_value.len())?;
    check_lens(input.len(), out_d1.len())?;
    act.validate()?;
    match *act {
        Activation::Squareplus { b } => {
            let b = T::from_f64(b);
            run_binary_out(exec, input, out_value, out_d1, move |x| {
                // Same rounding sequence as the scalar paths: sqrt(x*x + b)
                // is computed once and feeds both outputs.
                let s = (x * x + b).sqrt();
                (T::HALF * (x + s), T::HALF * (T::ONE + x / s))
            });
            Ok(())
        }
        _ => Err(KernelError::DerivativeUnsupported {
            activation: act.name(),
        }),
    }
}

/// Value kernel over a single buffer, overwriting it.
pub fn apply_in_place<T: Real>(
    act: &Activation,
    exec: Exec,
    buffer: &mut [T],
) -> Result<(), KernelError> {
    act.validate()?;
    match *act {
        Activation::Squareplus { b } => {
            let b = T::from_f64(b);
            run_unary_in_place(exec, buffer, move |x| squareplus_raw(x, b));
        }
        Activation::SoftplusStable => run_unary_in_place(exec, buffer, softplus_stable),
        Activation::SoftplusNaive => run_unary_in_place(exec, buffer, softplus_naive),
        Activation::Relu => run_unary_in_place(exec, buffer, relu),
        Activation::Elu { alpha } => {
            let alpha = T::from_f64(alpha);
            run_unary_in_place(exec, buffer, move |x| elu(x, alpha));
        }
        Activation::Swish => run_unary_in_place(exec, buffer, swish),
    }
    Ok(())
}

/// Left-to-right sum, explicitly order-sensitive: used to pin kernel output
/// in benchmark records and determinism tests without storing whole buffers.
pub fn checksum<T: Real>(buffer: &[T]) -> T {
    buffer.iter().fold(T::ZERO, |acc, &x| acc + x)
}
