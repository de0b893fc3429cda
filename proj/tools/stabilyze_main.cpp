// stabilyze CLI: thin front-end over the shared-library C API.
//
//   stabilyze <classify|sweep|witness|simulate|decay|resolvent-scan>
//             --config <path> [--out <dir>] [--workers N] [--resume]

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "stabilyze.h"

static void usage(FILE* to) {
  fprintf(to,
          "usage: stabilyze <classify|sweep|witness|simulate|decay|resolvent-scan>"
          " --config <path> [--out <dir>] [--workers N] [--resume]\n");
}

int main(int argc, char** argv) {
  if (argc < 2) {
    usage(stderr);
    return 1;
  }
  if (strcmp(argv[1], "--help") == 0 || strcmp(argv[1], "-h") == 0) {
    usage(stdout);
    return 0;
  }
  const char* command = argv[1];
  const char* config_path = NULL;
  const char* out_dir = NULL;
  int workers = 0;
  int resume = 0;

  for (int i = 2; i < argc; ++i) {
    if (strcmp(argv[i], "--config") == 0 && i + 1 < argc) {
      config_path = argv[++i];
    } else if (strcmp(argv[i], "--out") == 0 && i + 1 < argc) {
      out_dir = argv[++i];
    } else if (strcmp(argv[i], "--workers") == 0 && i + 1 < argc) {
      workers = atoi(argv[++i]);
      if (workers <= 0) {
        fprintf(stderr, "stabilyze: --workers expects a positive integer\n");
        return 1;
      }
    } else if (strcmp(argv[i], "--resume") == 0) {
      resume = 1;
    } else {
      fprintf(stderr, "stabilyze: unknown argument '%s'\n", argv[i]);
      usage(stderr);
      return 1;
    }
  }
  if (!config_path) {
    fprintf(stderr, "stabilyze: --config is required\n");
    usage(stderr);
    return 1;
  }

  int exit_code = 0;
  stz_status st = stz_run_command(command, config_path, out_dir, workers, resume, &exit_code);
  if (st != STZ_OK) {
    fprintf(stderr, "stabilyze: %s: %s\n", stz_status_str(st), stz_last_error());
    return st == STZ_E_CONFIG ? 1 : 2;
  }
  return exit_code;
}
