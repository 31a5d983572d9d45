// Copyright (C) 2026 The risho authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

namespace risho {

struct FresnelCS {
    double c;
    double s;
};

/// Normalized Fresnel integrals C(a) = int_0^a cos(pi t^2 / 2) dt and
/// S(a) = int_0^a sin(pi t^2 / 2) dt. Both are odd and tend to 1/2.
/// Throws std::invalid_argument for non-finite a.
FresnelCS fresnel_integrals(double a);

} // namespace risho
