//! Declarative network architecture (`NetworkSpec`) and the runtime network
//! holding parameters.
//!
//! A spec is a linear stack of layers over either the quaternion domain or
//! the real domain (for the CONV-ReLU-IP baseline). Signals flowing between
//! layers are quaternion or real tensors; dense layers flatten whatever
//! spatial shape they receive. The terminal `Logits` layer flattens the
//! incoming signal to real components (quaternion elements contribute their
//! four components in `(r, i, j, k)` order) and keeps the first `classes`
//! values as class scores.

use crate::error::{Error, Result};
use crate::layers::{
    qconv_forward, qfc_forward, qip_forward, real_avepool, real_conv_forward, real_ip_forward,
    real_relu, sq_avepool, DenseVariant, QConvKernel, QDenseWeights, RealConvKernel,
    RealDenseWeights,
};
use crate::tensor::{QTensor, RealTensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Activation {
    SqRelu,
    FqRelu,
    /// Real-valued ReLU, used by the baseline models.
    Relu,
}

impl std::fmt::Display for Activation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Activation::SqRelu => write!(f, "SQReLU"),
            Activation::FqRelu => write!(f, "FQReLU"),
            Activation::Relu => write!(f, "ReLU"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Quaternion,
    Real,
}

/// Input description: `channels` counts quaternion channels for the
/// quaternion domain and real channels for the real domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InputSpec {
    pub rows: usize,
    pub cols: usize,
    pub channels: usize,
    pub domain: Domain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LayerSpec {
    QConv { out_channels: usize, kernel: usize },
    RealConv { out_channels: usize, kernel: usize },
    AvgPool { window: (usize, usize), stride: (usize, usize) },
    Act(Activation),
    QDense { variant: DenseVariant, units: usize },
    RealDense { units: usize },
    /// Regroups a real signal with `4k` channels into `k` quaternion channels.
    Regroup,
    /// Terminal layer mapping the signal to `classes` real class scores.
    Logits { classes: usize },
}

#[derive(Clone, Debug)]
pub struct NetworkSpec {
    pub name: String,
    pub input: InputSpec,
    pub layers: Vec<LayerSpec>,
    pub classes: usize,
}

/// Shape of a signal between layers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignalShape {
    Q(usize, usize, usize),
    R(usize, usize, usize),
}

impl SignalShape {
    fn real_len(self) -> usize {
        match self {
            SignalShape::Q(r, c, ch) => r * c * ch * 4,
            SignalShape::R(r, c, ch) => r * c * ch,
        }
    }
}

fn pool_out(extent: usize, window: usize, stride: usize) -> Result<usize> {
    if window == 0 || window > extent {
        return Err(Error::ShapeMismatch(format!(
            "pool window {window} does not fit extent {extent}"
        )));
    }
    if stride == 0 {
        return Err(Error::InvalidArgument("pool stride must be >= 1".into()));
    }
    Ok((extent - window) / stride + 1)
}

impl NetworkSpec {
    /// Propagates shapes through the stack, returning the input shape of
    /// every layer. Fails on any inconsistency (domain misuse, non-positive
    /// spatial dims, misplaced terminal layer).
    pub fn shape_trace(&self) -> Result<Vec<SignalShape>> {
        let mut shape = match self.input.domain {
            Domain::Quaternion => SignalShape::Q(self.input.rows, self.input.cols, self.input.channels),
            Domain::Real => SignalShape::R(self.input.rows, self.input.cols, self.input.channels),
        };
        let mut trace = Vec::with_capacity(self.layers.len());
        for (idx, layer) in self.layers.iter().enumerate() {
            trace.push(shape);
            let terminal = idx + 1 == self.layers.len();
            shape = match (layer, shape) {
                (LayerSpec::QConv { out_channels, kernel }, SignalShape::Q(r, c, _)) => {
                    if *kernel == 0 || *kernel > r || *kernel > c {
                        return Err(Error::ShapeMismatch(format!(
                            "layer {idx}: kernel {kernel} does not fit {r}x{c}"
                        )));
                    }
                    SignalShape::Q(r - kernel + 1, c - kernel + 1, *out_channels)
                }
                (LayerSpec::RealConv { out_channels, kernel }, SignalShape::R(r, c, _)) => {
                    if *kernel == 0 || *kernel > r || *kernel > c {
                        return Err(Error::ShapeMismatch(format!(
                            "layer {idx}: kernel {kernel} does not fit {r}x{c}"
                        )));
                    }
                    SignalShape::R(r - kernel + 1, c - kernel + 1, *out_channels)
                }
                (LayerSpec::AvgPool { window, stride }, SignalShape::Q(r, c, ch)) => {
                    SignalShape::Q(pool_out(r, window.0, stride.0)?, pool_out(c, window.1, stride.1)?, ch)
                }
                (LayerSpec::AvgPool { window, stride }, SignalShape::R(r, c, ch)) => {
                    SignalShape::R(pool_out(r, window.0, stride.0)?, pool_out(c, window.1, stride.1)?, ch)
                }
                (LayerSpec::Act(Activation::Relu), SignalShape::R(r, c, ch)) => SignalShape::R(r, c, ch),
                (LayerSpec::Act(Activation::SqRelu | Activation::FqRelu), SignalShape::Q(r, c, ch)) => {
                    SignalShape::Q(r, c, ch)
                }
                (LayerSpec::QDense { variant, units }, SignalShape::Q(..)) => match variant {
                    DenseVariant::Qfc => SignalShape::Q(1, 1, *units),
                    DenseVariant::Qip => SignalShape::R(1, 1, *units),
                },
                (LayerSpec::RealDense { units }, SignalShape::R(..)) => SignalShape::R(1, 1, *units),
                (LayerSpec::Regroup, SignalShape::R(r, c, ch)) => {
                    if ch % 4 != 0 {
                        return Err(Error::ChannelMismatch { expected: 4, got: ch });
                    }
                    SignalShape::Q(r, c, ch / 4)
                }
                (LayerSpec::Logits { classes }, s) => {
                    if !terminal {
                        return Err(Error::InvalidArgument(format!(
                            "layer {idx}: Logits must be the last layer"
                        )));
                    }
                    if s.real_len() < *classes {
                        return Err(Error::ShapeMismatch(format!(
                            "layer {idx}: {} real components available for {classes} classes",
                            s.real_len()
                        )));
                    }
                    SignalShape::R(1, 1, *classes)
                }
                (l, s) => {
                    return Err(Error::InvalidArgument(format!(
                        "layer {idx}: {l:?} cannot consume signal {s:?}"
                    )));
                }
            };
        }
        match (self.layers.last(), shape) {
            (Some(LayerSpec::Logits { classes }), _) if *classes == self.classes => Ok(trace),
            _ => Err(Error::InvalidArgument(
                "network must end in a Logits layer matching the class count".into(),
            )),
        }
    }

    /// Number of weight parameters in real units (biases not counted, the
    /// convention used when naming model sizes).
    pub fn parameter_count(&self) -> Result<usize> {
        let trace = self.shape_trace()?;
        let mut total = 0usize;
        for (layer, shape) in self.layers.iter().zip(trace.iter()) {
            total += match (layer, shape) {
                (LayerSpec::QConv { out_channels, kernel }, SignalShape::Q(_, _, ch)) => {
                    out_channels * ch * kernel * kernel * 4
                }
                (LayerSpec::RealConv { out_channels, kernel }, SignalShape::R(_, _, ch)) => {
                    out_channels * ch * kernel * kernel
                }
                (LayerSpec::QDense { units, .. }, SignalShape::Q(r, c, ch)) => units * r * c * ch * 4,
                (LayerSpec::RealDense { units }, SignalShape::R(r, c, ch)) => units * r * c * ch,
                _ => 0,
            };
        }
        Ok(total)
    }
}

/// A signal flowing between layers.
#[derive(Clone, Debug)]
pub enum Signal {
    Q(QTensor),
    R(RealTensor),
}

impl Signal {
    pub fn shape(&self) -> SignalShape {
        match self {
            Signal::Q(t) => {
                let (r, c, ch) = t.shape();
                SignalShape::Q(r, c, ch)
            }
            Signal::R(t) => {
                let (r, c, ch) = t.shape();
                SignalShape::R(r, c, ch)
            }
        }
    }

    /// Flattened real components, quaternion elements contributing
    /// `(r, i, j, k)` in element order.
    pub fn flatten_real(&self) -> Vec<f64> {
        match self {
            Signal::Q(t) => t.real_view().data().to_vec(),
            Signal::R(t) => t.data().to_vec(),
        }
    }
}

/// Runtime layer: spec plus parameters where the layer has any.
#[derive(Clone, Debug)]
pub enum Layer {
    QConv(QConvKernel),
    RealConv(RealConvKernel),
    AvgPool { window: (usize, usize), stride: (usize, usize) },
    Act(Activation),
    QDense(QDenseWeights),
    RealDense(RealDenseWeights),
    Regroup,
    Logits { classes: usize },
}

/// A network with parameters, built from a [`NetworkSpec`].
#[derive(Clone, Debug)]
pub struct Network {
    pub spec: NetworkSpec,
    pub layers: Vec<Layer>,
}

impl Network {
    /// Builds the parameter containers (all zeros) for a spec. Use
    /// [`crate::train::init_network`] to draw initial weights.
    pub fn zeros(spec: &NetworkSpec) -> Result<Self> {
        let trace = spec.shape_trace()?;
        let mut layers = Vec::with_capacity(spec.layers.len());
        for (layer, shape) in spec.layers.iter().zip(trace.iter()) {
            layers.push(match (layer, *shape) {
                (LayerSpec::QConv { out_channels, kernel }, SignalShape::Q(_, _, ch)) => {
                    Layer::QConv(QConvKernel::zeros(*out_channels, ch, *kernel))
                }
                (LayerSpec::RealConv { out_channels, kernel }, SignalShape::R(_, _, ch)) => {
                    Layer::RealConv(RealConvKernel::zeros(*out_channels, ch, *kernel))
                }
                (LayerSpec::AvgPool { window, stride }, _) => {
                    Layer::AvgPool { window: *window, stride: *stride }
                }
                (LayerSpec::Act(a), _) => Layer::Act(*a),
                (LayerSpec::QDense { variant, units }, SignalShape::Q(r, c, ch)) => {
                    Layer::QDense(QDenseWeights::zeros(*variant, *units, r * c * ch))
                }
                (LayerSpec::RealDense { units }, SignalShape::R(r, c, ch)) => {
                    Layer::RealDense(RealDenseWeights::zeros(*units, r * c * ch))
                }
                (LayerSpec::Regroup, _) => Layer::Regroup,
                (LayerSpec::Logits { classes }, _) => Layer::Logits { classes: *classes },
                _ => unreachable!("shape_trace accepted an inconsistent layer"),
            });
        }
        Ok(Self { spec: spec.clone(), layers })
    }

    /// Forward pass to class scores.
    pub fn forward(&self, input: &Signal) -> Result<Vec<f64>> {
        Ok(self.forward_trace(input)?.1)
    }

    /// Forward pass that also returns the input seen by every layer, for the
    /// backward pass.
    pub fn forward_trace(&self, input: &Signal) -> Result<(Vec<Signal>, Vec<f64>)> {
        let mut signal = input.clone();
        let mut trace = Vec::with_capacity(self.layers.len());
        let mut logits = None;
        for layer in &self.layers {
            trace.push(signal.clone());
            signal = match (layer, signal) {
                (Layer::QConv(k), Signal::Q(t)) => Signal::Q(qconv_forward(&t, k)?),
                (Layer::RealConv(k), Signal::R(t)) => Signal::R(real_conv_forward(&t, k)?),
                (Layer::AvgPool { window, stride }, Signal::Q(t)) => {
                    Signal::Q(sq_avepool(&t, *window, *stride)?)
                }
                (Layer::AvgPool { window, stride }, Signal::R(t)) => {
                    Signal::R(real_avepool(&t, *window, *stride)?)
                }
                (Layer::Act(Activation::SqRelu), Signal::Q(t)) => Signal::Q(t.map(crate::layers::sqrelu)),
                (Layer::Act(Activation::FqRelu), Signal::Q(t)) => Signal::Q(t.map(crate::layers::fqrelu)),
                (Layer::Act(Activation::Relu), Signal::R(t)) => {
                    let (r, c, ch) = t.shape();
                    let data = t.data().iter().map(|&x| real_relu(x)).collect();
                    Signal::R(RealTensor::from_data(r, c, ch, data)?)
                }
                (Layer::QDense(w), Signal::Q(t)) => match w.variant {
                    DenseVariant::Qfc => {
                        let out = qfc_forward(t.data(), w)?;
                        Signal::Q(QTensor::from_data(1, 1, out.len(), out)?)
                    }
                    DenseVariant::Qip => {
                        let out = qip_forward(t.data(), w)?;
                        Signal::R(RealTensor::from_data(1, 1, out.len(), out)?)
                    }
                },
                (Layer::RealDense(w), Signal::R(t)) => {
                    let out = real_ip_forward(t.data(), w)?;
                    Signal::R(RealTensor::from_data(1, 1, out.len(), out)?)
                }
                (Layer::Regroup, Signal::R(t)) => Signal::Q(QTensor::from_real_view(&t)?),
                (Layer::Logits { classes }, s) => {
                    let flat = s.flatten_real();
                    if flat.len() < *classes {
                        return Err(Error::ShapeMismatch(format!(
                            "{} real components available for {classes} classes",
                            flat.len()
                        )));
                    }
                    logits = Some(flat[..*classes].to_vec());
                    break;
                }
                (l, s) => {
                    return Err(Error::InvalidArgument(format!(
                        "layer {l:?} cannot consume signal {:?}",
                        s.shape()
                    )));
                }
            };
        }
        match logits {
            Some(l) => Ok((trace, l)),
            None => Err(Error::InvalidArgument("network has no Logits layer".into())),
        }
    }
}
