// Copyright 2026 the qtrack developers.
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include "qtrack/chimera.hpp"
#include "qtrack/config.hpp"
#include "qtrack/denby_peterson.hpp"
#include "qtrack/errors.hpp"
#include "qtrack/event.hpp"
#include "qtrack/event_gen.hpp"
#include "qtrack/event_io.hpp"
#include "qtrack/ising.hpp"
#include "qtrack/ising_io.hpp"
#include "qtrack/mean_field.hpp"
#include "qtrack/metrics.hpp"
#include "qtrack/pipeline.hpp"
#include "qtrack/result_io.hpp"
#include "qtrack/rng.hpp"
#include "qtrack/segment.hpp"
#include "qtrack/solvers.hpp"
