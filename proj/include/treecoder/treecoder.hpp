// Copyright 2026 The Treecoder Authors.
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

#include "treecoder/cli.hpp"
#include "treecoder/code_algebra.hpp"
#include "treecoder/date.hpp"
#include "treecoder/dictionary.hpp"
#include "treecoder/phrase_trie.hpp"
#include "treecoder/pipeline.hpp"
#include "treecoder/rules.hpp"
#include "treecoder/semantics.hpp"
#include "treecoder/trace.hpp"
#include "treecoder/tree.hpp"
