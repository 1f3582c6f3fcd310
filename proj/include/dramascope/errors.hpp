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

#include <stdexcept>
#include <string>

namespace dramascope {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration detected before any work is done.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data (files, matrices, distributions).
class DataError : public Error {
 public:
  using Error::Error;
};

// Transport-level failure. Retrying the same call may succeed.
class NetworkError : public Error {
 public:
  using Error::Error;
};

// A pipeline stage was invoked before its upstream artifacts exist.
class PipelineError : public Error {
 public:
  using Error::Error;
};

}  // namespace dramascope
