/**
 * Copyright (c) the dvfsinfer contributors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef DVFSINFER_NUMFMT_HPP
#define DVFSINFER_NUMFMT_HPP

#include <string>

namespace dvfsinfer {

/// Shortest decimal string that parses back to exactly the same double.
/// All CSV and stdout numbers go through this so that identical inputs
/// produce byte-identical outputs.
std::string format_double(double value);

} // namespace dvfsinfer

#endif // DVFSINFER_NUMFMT_HPP
