//! Forward computation of the network layer types: quaternion convolution,
//! split-quaternion average pooling, the SQReLU and FQReLU activations, the
//! QFC and QIP dense layers, their real-valued baseline counterparts, and the
//! softmax cross-entropy loss.
//!
//! The convolution slides the kernel without flipping, pairing weight
//! `w(s,t)` with input `x(u+s, v+t)` for output `f(u,v)` — the same pairing
//! the backward pass uses — in valid mode with stride 1, so a `L×L` kernel on
//! an `N×M` input yields `(N−L+1)×(M−L+1)`.

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::tensor::{QTensor, RealTensor};

/// Quaternion convolution kernel: `out_channels × in_channels` spatial taps
/// of size `kernel × kernel`, plus one quaternion bias per output channel.
#[derive(Clone, Debug)]
pub struct QConvKernel {
    pub out_channels: usize,
    pub in_channels: usize,
    pub kernel: usize,
    /// Indexed `[out][in][row][col]`, flattened.
    pub weights: Vec<Quaternion>,
    pub bias: Vec<Quaternion>,
}

impl QConvKernel {
    pub fn zeros(out_channels: usize, in_channels: usize, kernel: usize) -> Self {
        Self {
            out_channels,
            in_channels,
            kernel,
            weights: vec![Quaternion::ZERO; out_channels * in_channels * kernel * kernel],
            bias: vec![Quaternion::ZERO; out_channels],
        }
    }

    #[inline]
    pub fn weight(&self, out: usize, inp: usize, row: usize, col: usize) -> Quaternion {
        self.weights[((out * self.in_channels + inp) * self.kernel + row) * self.kernel + col]
    }

    #[inline]
    pub fn weight_mut(&mut self, out: usize, inp: usize, row: usize, col: usize) -> &mut Quaternion {
        &mut self.weights[((out * self.in_channels + inp) * self.kernel + row) * self.kernel + col]
    }

    /// Weight parameters in real units (biases not counted).
    pub fn weight_params(&self) -> usize {
        self.weights.len() * 4
    }
}

/// Left-sided quaternion convolution: each output element accumulates
/// Hamilton products `w(s,t) · q(u+s, v+t)` over the kernel window and all
/// input channels, plus the output channel's bias.
pub fn qconv_forward(input: &QTensor, kernel: &QConvKernel) -> Result<QTensor> {
    let (rows, cols, channels) = input.shape();
    if channels != kernel.in_channels {
        return Err(Error::ChannelMismatch { expected: kernel.in_channels, got: channels });
    }
    let l = kernel.kernel;
    if l == 0 || l > rows || l > cols {
        return Err(Error::ShapeMismatch(format!(
            "kernel {l}x{l} does not fit input {rows}x{cols}"
        )));
    }
    let out_rows = rows - l + 1;
    let out_cols = cols - l + 1;
    let mut out = QTensor::zeros(out_rows, out_cols, kernel.out_channels);
    for u in 0..out_rows {
        for v in 0..out_cols {
            for ko in 0..kernel.out_channels {
                let mut acc = kernel.bias[ko];
                for ci in 0..channels {
                    for s in 0..l {
                        for t in 0..l {
                            acc += kernel.weight(ko, ci, s, t) * input.get(u + s, v + t, ci);
                        }
                    }
                }
                out.set(u, v, ko, acc);
            }
        }
    }
    Ok(out)
}

/// Split-quaternion average pooling: componentwise mean over each window,
/// per channel.
pub fn sq_avepool(input: &QTensor, window: (usize, usize), stride: (usize, usize)) -> Result<QTensor> {
    let (rows, cols, channels) = input.shape();
    let (wr, wc) = window;
    let (sr, sc) = stride;
    if wr == 0 || wc == 0 || wr > rows || wc > cols {
        return Err(Error::ShapeMismatch(format!(
            "pool window {wr}x{wc} does not fit input {rows}x{cols}"
        )));
    }
    if sr == 0 || sc == 0 {
        return Err(Error::InvalidArgument("pool stride must be >= 1".into()));
    }
    let out_rows = (rows - wr) / sr + 1;
    let out_cols = (cols - wc) / sc + 1;
    let inv = 1.0 / (wr * wc) as f64;
    let mut out = QTensor::zeros(out_rows, out_cols, channels);
    for u in 0..out_rows {
        for v in 0..out_cols {
            for ch in 0..channels {
                let mut acc = Quaternion::ZERO;
                for s in 0..wr {
                    for t in 0..wc {
                        acc += input.get(u * sr + s, v * sc + t, ch);
                    }
                }
                out.set(u, v, ch, acc.scale(inv));
            }
        }
    }
    Ok(out)
}

/// Split Quaternion ReLU: `max(0, ·)` on each of the four components.
#[inline]
pub fn sqrelu(q: Quaternion) -> Quaternion {
    Quaternion::new(q.r.max(0.0), q.i.max(0.0), q.j.max(0.0), q.k.max(0.0))
}

/// Fully Quaternion ReLU: passes the whole quaternion through when its phase
/// lies in `[0, π/2]`, otherwise outputs zero.
#[inline]
pub fn fqrelu(q: Quaternion) -> Quaternion {
    if q.phase() <= std::f64::consts::FRAC_PI_2 {
        q
    } else {
        Quaternion::ZERO
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DenseVariant {
    /// Quaternion fully connected: quaternion output per unit.
    Qfc,
    /// Quaternion inner product: real output per unit.
    Qip,
}

/// Bias storage for dense layers: QFC carries a quaternion per unit, QIP a
/// real per unit.
#[derive(Clone, Debug)]
pub enum DenseBias {
    Quaternion(Vec<Quaternion>),
    Real(Vec<f64>),
}

/// Dense-layer weights: one full-input-shaped quaternion kernel per output
/// unit.
#[derive(Clone, Debug)]
pub struct QDenseWeights {
    pub variant: DenseVariant,
    pub units: usize,
    pub input_len: usize,
    /// Indexed `[unit][element]`, flattened.
    pub weights: Vec<Quaternion>,
    pub bias: DenseBias,
}

impl QDenseWeights {
    pub fn zeros(variant: DenseVariant, units: usize, input_len: usize) -> Self {
        let bias = match variant {
            DenseVariant::Qfc => DenseBias::Quaternion(vec![Quaternion::ZERO; units]),
            DenseVariant::Qip => DenseBias::Real(vec![0.0; units]),
        };
        Self { variant, units, input_len, weights: vec![Quaternion::ZERO; units * input_len], bias }
    }

    #[inline]
    pub fn weight(&self, unit: usize, elem: usize) -> Quaternion {
        self.weights[unit * self.input_len + elem]
    }

    #[inline]
    pub fn weight_mut(&mut self, unit: usize, elem: usize) -> &mut Quaternion {
        &mut self.weights[unit * self.input_len + elem]
    }

    pub fn weight_params(&self) -> usize {
        self.weights.len() * 4
    }

    fn check_input(&self, input: &[Quaternion]) -> Result<()> {
        if input.len() != self.input_len {
            return Err(Error::ShapeMismatch(format!(
                "dense layer expects {} input elements, got {}",
                self.input_len,
                input.len()
            )));
        }
        Ok(())
    }
}

/// Quaternion fully connected layer: per unit, the sum of Hamilton products
/// `w(n) · q(n)` over all input elements (weight on the left) plus a
/// quaternion bias.
pub fn qfc_forward(input: &[Quaternion], layer: &QDenseWeights) -> Result<Vec<Quaternion>> {
    layer.check_input(input)?;
    let DenseBias::Quaternion(bias) = &layer.bias else {
        return Err(Error::InvalidArgument("qfc_forward called on a QIP layer".into()));
    };
    let mut out = Vec::with_capacity(layer.units);
    for unit in 0..layer.units {
        let mut acc = bias[unit];
        for (elem, &q) in input.iter().enumerate() {
            acc += layer.weight(unit, elem) * q;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Quaternion inner product layer: per unit, the sum over input elements of
/// the 4-component inner product between the conjugated weight and the input
/// (`w_R q_R − w_I q_I − w_J q_J − w_K q_K`), plus a real bias. The output is
/// always real.
pub fn qip_forward(input: &[Quaternion], layer: &QDenseWeights) -> Result<Vec<f64>> {
    layer.check_input(input)?;
    let DenseBias::Real(bias) = &layer.bias else {
        return Err(Error::InvalidArgument("qip_forward called on a QFC layer".into()));
    };
    let mut out = Vec::with_capacity(layer.units);
    for unit in 0..layer.units {
        let mut acc = bias[unit];
        for (elem, &q) in input.iter().enumerate() {
            acc += layer.weight(unit, elem).conj().dot(q);
        }
        out.push(acc);
    }
    Ok(out)
}

/// Real-valued convolution kernel for the baseline models.
#[derive(Clone, Debug)]
pub struct RealConvKernel {
    pub out_channels: usize,
    pub in_channels: usize,
    pub kernel: usize,
    pub weights: Vec<f64>,
    pub bias: Vec<f64>,
}

impl RealConvKernel {
    pub fn zeros(out_channels: usize, in_channels: usize, kernel: usize) -> Self {
        Self {
            out_channels,
            in_channels,
            kernel,
            weights: vec![0.0; out_channels * in_channels * kernel * kernel],
            bias: vec![0.0; out_channels],
        }
    }

    #[inline]
    pub fn weight(&self, out: usize, inp: usize, row: usize, col: usize) -> f64 {
        self.weights[((out * self.in_channels + inp) * self.kernel + row) * self.kernel + col]
    }

    #[inline]
    pub fn weight_mut(&mut self, out: usize, inp: usize, row: usize, col: usize) -> &mut f64 {
        &mut self.weights[((out * self.in_channels + inp) * self.kernel + row) * self.kernel + col]
    }
}

/// Standard valid-mode, stride-1 real convolution.
pub fn real_conv_forward(input: &RealTensor, kernel: &RealConvKernel) -> Result<RealTensor> {
    let (rows, cols, channels) = input.shape();
    if channels != kernel.in_channels {
        return Err(Error::ChannelMismatch { expected: kernel.in_channels, got: channels });
    }
    let l = kernel.kernel;
    if l == 0 || l > rows || l > cols {
        return Err(Error::ShapeMismatch(format!(
            "kernel {l}x{l} does not fit input {rows}x{cols}"
        )));
    }
    let out_rows = rows - l + 1;
    let out_cols = cols - l + 1;
    let mut out = RealTensor::zeros(out_rows, out_cols, kernel.out_channels);
    for u in 0..out_rows {
        for v in 0..out_cols {
            for ko in 0..kernel.out_channels {
                let mut acc = kernel.bias[ko];
                for ci in 0..channels {
                    for s in 0..l {
                        for t in 0..l {
                            acc += kernel.weight(ko, ci, s, t) * input.get(u + s, v + t, ci);
                        }
                    }
                }
                out.set(u, v, ko, acc);
            }
        }
    }
    Ok(out)
}

#[inline]
pub fn real_relu(x: f64) -> f64 {
    x.max(0.0)
}

/// Channel-wise average pooling on a real tensor.
pub fn real_avepool(input: &RealTensor, window: (usize, usize), stride: (usize, usize)) -> Result<RealTensor> {
    let (rows, cols, channels) = input.shape();
    let (wr, wc) = window;
    let (sr, sc) = stride;
    if wr == 0 || wc == 0 || wr > rows || wc > cols {
        return Err(Error::ShapeMismatch(format!(
            "pool window {wr}x{wc} does not fit input {rows}x{cols}"
        )));
    }
    if sr == 0 || sc == 0 {
        return Err(Error::InvalidArgument("pool stride must be >= 1".into()));
    }
    let out_rows = (rows - wr) / sr + 1;
    let out_cols = (cols - wc) / sc + 1;
    let inv = 1.0 / (wr * wc) as f64;
    let mut out = RealTensor::zeros(out_rows, out_cols, channels);
    for u in 0..out_rows {
        for v in 0..out_cols {
            for ch in 0..channels {
                let mut acc = 0.0;
                for s in 0..wr {
                    for t in 0..wc {
                        acc += input.get(u * sr + s, v * sc + t, ch);
                    }
                }
                out.set(u, v, ch, acc * inv);
            }
        }
    }
    Ok(out)
}

/// Real dense (inner product) layer weights.
#[derive(Clone, Debug)]
pub struct RealDenseWeights {
    pub units: usize,
    pub input_len: usize,
    pub weights: Vec<f64>,
    pub bias: Vec<f64>,
}

impl RealDenseWeights {
    pub fn zeros(units: usize, input_len: usize) -> Self {
        Self { units, input_len, weights: vec![0.0; units * input_len], bias: vec![0.0; units] }
    }

    #[inline]
    pub fn weight(&self, unit: usize, elem: usize) -> f64 {
        self.weights[unit * self.input_len + elem]
    }
}

pub fn real_ip_forward(input: &[f64], layer: &RealDenseWeights) -> Result<Vec<f64>> {
    if input.len() != layer.input_len {
        return Err(Error::ShapeMismatch(format!(
            "dense layer expects {} input elements, got {}",
            layer.input_len,
            input.len()
        )));
    }
    let mut out = Vec::with_capacity(layer.units);
    for unit in 0..layer.units {
        let mut acc = layer.bias[unit];
        for (elem, &x) in input.iter().enumerate() {
            acc += layer.weight(unit, elem) * x;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Numerically stable softmax cross-entropy. Returns the loss and its
/// gradient with respect to the logits (which sums to zero).
pub fn softmax_cross_entropy(logits: &[f64], label: usize) -> Result<(f64, Vec<f64>)> {
    if logits.len() < 2 {
        return Err(Error::InvalidArgument("softmax needs at least 2 classes".into()));
    }
    if label >= logits.len() {
        return Err(Error::InvalidArgument(format!(
            "label {label} out of range for {} classes",
            logits.len()
        )));
    }
    let max = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let log_sum_exp = max + logits.iter().map(|&z| (z - max).exp()).sum::<f64>().ln();
    let loss = log_sum_exp - logits[label];
    let mut grad: Vec<f64> = logits.iter().map(|&z| (z - log_sum_exp).exp()).collect();
    grad[label] -= 1.0;
    Ok((loss, grad))
}
