// Copyright 2026 The Remit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef REMIT_BACKEND_H_
#define REMIT_BACKEND_H_

#include <memory>
#include <stdexcept>

#include "remit/core.h"
#include "remit/rng.h"
#include "remit/statevector.h"

namespace remit {

class BackendError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Outcome frequencies of one execution. `ideal` is what a perfect readout
/// would have recorded for the same shots; `observed` is what the device reports.
struct Execution {
    OutcomeDistribution ideal;
    OutcomeDistribution observed;
};

/// A simulated device: prepares a state, measures it `shots` times and reports
/// outcome frequencies. Stands in for real hardware.
class Backend {
 public:
    virtual ~Backend() = default;

    /// Measures a state whose ideal outcome distribution is `prepared`.
    virtual Execution execute(const OutcomeDistribution& prepared, std::uint64_t shots, Rng& rng) const = 0;

    Execution run(const Circuit& circuit, std::uint64_t shots, Rng& rng) const;
};

/// Perfect readout; shots are sampled.
class NoiselessBackend final : public Backend {
 public:
    Execution execute(const OutcomeDistribution& prepared, std::uint64_t shots, Rng& rng) const override;
};

/// Sampled shots followed by per-shot bit flips. Sampling consumes the stream
/// before any flip does, so a noiseless model reproduces NoiselessBackend.
class SampledReadoutBackend final : public Backend {
 public:
    explicit SampledReadoutBackend(BitFlipModel model) : model_(std::move(model)) {}
    const BitFlipModel& model() const { return model_; }
    Execution execute(const OutcomeDistribution& prepared, std::uint64_t shots, Rng& rng) const override;

 private:
    BitFlipModel model_;
};

/// No sampling: reports the exact channel output as if infinitely many shots
/// were taken. Deterministic; ignores the stream.
class ExactChannelBackend final : public Backend {
 public:
    explicit ExactChannelBackend(BitFlipModel model) : model_(std::move(model)) {}
    const BitFlipModel& model() const { return model_; }
    Execution execute(const OutcomeDistribution& prepared, std::uint64_t shots, Rng& rng) const override;

 private:
    BitFlipModel model_;
};

}  // namespace remit

#endif  // REMIT_BACKEND_H_
