// SPDX-License-Identifier: Apache-2.0
//
// faa - flexible antenna array channel modelling and optimization
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

#ifndef FAA_ERROR_HPP
#define FAA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace faa
{
    // Invalid argument or configuration (maps to CLI exit code 2).
    class ConfigError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Argument outside the domain of a model (bend angle too large, angle in a
    // pattern boundary band, ...).
    class DomainError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Rank deficiency or singularity beyond the retry policy (maps to CLI exit code 3).
    class NumericalError : public std::runtime_error
    {
    public:
        NumericalError(const std::string &what, double condition_number)
            : std::runtime_error(what + " (condition number " + std::to_string(condition_number) + ")"),
              condition_number_(condition_number)
        {
        }

        double condition_number() const noexcept { return condition_number_; }

    private:
        double condition_number_;
    };
}

#endif
