/* layoutlab - A*-over-maze data-layout benchmark laboratory.
 *
 * C interface to the shared library: opaque handles plus status codes.
 * Every function that can fail returns an llb_status; on failure a
 * human-readable message is available from llb_last_error() until the
 * next call on the same thread. Objects returned through out-parameters
 * are owned by the caller and released with the matching _free function.
 */
#ifndef LAYOUTLAB_H
#define LAYOUTLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LLB_API __declspec(dllexport)
#else
#define LLB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum llb_status {
    LLB_OK = 0,
    LLB_ERR_INVALID_ARGUMENT = 1,
    LLB_ERR_IO = 2,
    LLB_ERR_FORMAT = 3,     /* bad magic/version/checksum, malformed stream */
    LLB_ERR_VALIDATION = 4, /* readable input violating semantic constraints */
    LLB_ERR_NO_PATH = 5,    /* goal unreachable */
    LLB_ERR_CONFIG = 6,     /* bad experiment or cache configuration */
    LLB_ERR_RUN = 7,        /* experiment cell failed */
    LLB_ERR_UNAVAILABLE = 8,
    LLB_ERR_INTERNAL = 9
} llb_status;

typedef struct llb_maze llb_maze;

LLB_API const char* llb_version(void);

/* Message from the most recent failing call on this thread ("" if none). */
LLB_API const char* llb_last_error(void);

/* Releases strings returned through char** out-parameters. */
LLB_API void llb_string_free(char* s);

/* ---- maze ------------------------------------------------------------ */

/* Deterministic perfect maze: identical (width, height, seed) inputs
 * produce bit-identical mazes. Start is the bottom-right corner, goal
 * (1,1). */
LLB_API llb_status llb_maze_generate(uint32_t width, uint32_t height, uint64_t seed,
                                     llb_maze** out_maze);

LLB_API llb_status llb_maze_load(const char* path, llb_maze** out_maze);
LLB_API llb_status llb_maze_save(const llb_maze* maze, const char* path);
LLB_API void llb_maze_free(llb_maze* maze);

LLB_API uint32_t llb_maze_width(const llb_maze* maze);
LLB_API uint32_t llb_maze_height(const llb_maze* maze);
LLB_API uint64_t llb_maze_seed(const llb_maze* maze);

/* Perfect-maze check: connected, acyclic, symmetric walls, closed
 * boundary. *out_ok is 1 when the maze passes. When out_report is
 * non-NULL it receives a newline-separated violation list (empty string
 * when ok); release it with llb_string_free. Validation findings are
 * reported through *out_ok, not through the return status. */
LLB_API llb_status llb_maze_validate(const llb_maze* maze, int* out_ok, char** out_report);

/* ---- experiments ------------------------------------------------------ */

/* Runs the experiment described by the key=value config file and writes
 * report.json, summary.csv and figdata/ into out_dir. */
LLB_API llb_status llb_run_experiment_file(const char* config_path, const char* out_dir);

/* Replays an LLTRACE file through the cache hierarchy given by
 * cache_spec ("default" or a key=value file) and writes the cache report
 * as JSON to out_json_path. */
LLB_API llb_status llb_simulate_trace_file(const char* trace_path, const char* cache_spec,
                                           const char* out_json_path);

#ifdef __cplusplus
}
#endif

#endif /* LAYOUTLAB_H */
