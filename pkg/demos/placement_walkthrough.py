"""Walk through the cyclic placement for an 8-cache, access-degree-2 system.

Every file is cut into K subfiles. Subfile m of every file goes into cache m
and the i-1 caches sitting L, 2L, ... below it, so each cache stores exactly
i subfiles per file and the memory corner M = i*N/K comes out automatically.
A user reads L consecutive caches, which makes each subfile visible to a run
of min(iL, K) consecutive users.
"""

from macc_lab import MaccInstance, accessible_subfiles, needed_subfiles, place


def main() -> None:
    inst = MaccInstance(n_files=8, n_caches=8, access_degree=2, memory_index=3)
    print(f"K = {inst.n_caches} caches, L = {inst.access_degree}, corner i = {inst.memory_index}")
    print(f"memory per cache: {inst.memory_per_cache} file units")
    print(f"coverage per subfile: iL = {inst.coverage} consecutive users")
    print()

    placement = place(inst)
    print("cache contents (subfile index, same for every file):")
    for c in range(1, inst.n_caches + 1):
        stored = sorted(placement.cache_contents[c - 1])
        print(f"  cache {c}: subfiles {stored}")
    print()

    print("readers of each subfile (consecutive run, cyclic):")
    for m in range(1, inst.n_caches + 1):
        readers = placement.subfile_users[m - 1]
        print(f"  subfile {m}: users {list(readers)}")
    print()

    print("per-user split into already-visible vs still-needed subfiles:")
    for j in range(1, inst.n_users + 1):
        have = sorted(accessible_subfiles(inst, j))
        need = sorted(needed_subfiles(inst, j))
        print(f"  user {j}: sees {have}, needs {need}")
    print()
    n_needed = len(needed_subfiles(inst, 1))
    print(f"every user misses K - iL = {n_needed} subfiles of its file;")
    print("delivery only has to cover those cells.")


if __name__ == "__main__":
    main()
