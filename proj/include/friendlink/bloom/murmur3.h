// Copyright 2026 The Friendlink Authors
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

#ifndef FRIENDLINK_BLOOM_MURMUR3_H_
#define FRIENDLINK_BLOOM_MURMUR3_H_

#include <cstdint>

#include "friendlink/bytes.h"

namespace friendlink {

// MurmurHash3, x86 32-bit variant.
uint32_t Murmur3_32(ByteSpan data, uint32_t seed);

}  // namespace friendlink

#endif  // FRIENDLINK_BLOOM_MURMUR3_H_
