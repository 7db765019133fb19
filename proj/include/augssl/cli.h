// include/augssl/cli.h

// Copyright 2026  augssl contributors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef AUGSSL_CLI_H_
#define AUGSSL_CLI_H_

namespace augssl {

// Entry point of the augssl binary. Returns the process exit code:
// 0 success, 1 runtime failure (one "error: ..." line on stderr),
// 2 usage problems.
int run_cli(int argc, const char *const *argv);

}  // namespace augssl

#endif  // AUGSSL_CLI_H_
