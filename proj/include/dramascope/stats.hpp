// Copyright 2026 The dramascope authors
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

#pragma once

namespace dramascope {

// Regularized incomplete beta function I_x(a, b), evaluated with the
// continued-fraction expansion (modified Lentz). a, b > 0, x in [0, 1].
double regularized_incomplete_beta(double a, double b, double x);

// CDF of Student's t distribution with df degrees of freedom.
double student_t_cdf(double t, double df);

// Two-sided p-value for an observed t statistic.
double student_t_two_sided_p(double t, double df);

}  // namespace dramascope
