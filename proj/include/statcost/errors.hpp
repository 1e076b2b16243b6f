// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace statcost {

// Error taxonomy. Construction errors are raised eagerly when a game or
// distribution is built with bad parameters; capability errors when an
// exhaustive operation is asked to run beyond its exact limit. Data errors
// (empty input, missing buckets) are kept distinct from math errors
// (degenerate scaling, undefined curvature/spread/conditional).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConstructionError : public Error {
 public:
  using Error::Error;
};

// Requested n exceeds the exact exhaustive limit of an oracle.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

// A required sample bucket is empty; the message names the bucket(s).
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// m = 0 datasets are valid containers but invalid estimator input.
class EmptyInputError : public Error {
 public:
  using Error::Error;
};

class DegenerateScalingError : public Error {
 public:
  using Error::Error;
};

class UndefinedCurvatureError : public Error {
 public:
  using Error::Error;
};

class InfiniteSpreadError : public Error {
 public:
  using Error::Error;
};

class UndefinedConditionalError : public Error {
 public:
  using Error::Error;
};

// File I/O and parsing; the message carries the offending line number.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace statcost
