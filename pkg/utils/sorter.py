"""
Merge Sort Implementation
Stable ascending sort used to put enumerations and reports into their
deterministic order, independent of how the work was partitioned.
"""


def merge(left, right, key):
    """
    Merge two sorted lists into one sorted list (ascending order).

    Args:
        left (list): First sorted list.
        right (list): Second sorted list.
        key (callable): Sort key.

    Returns:
        list: Merged sorted list. Ties keep left before right.
    """
    result = []
    i = j = 0

    while i < len(left) and j < len(right):
        if key(right[j]) < key(left[i]):
            result.append(right[j])
            j += 1
        else:
            result.append(left[i])
            i += 1

    result.extend(left[i:])
    result.extend(right[j:])
    return result


def merge_sort(arr, key):
    """
    Sort a list using merge sort (divide and conquer).

    Args:
        arr (list): Items to sort.
        key (callable): Sort key.

    Returns:
        list: A new sorted list.
    """
    if len(arr) <= 1:
        return list(arr)

    mid = len(arr) // 2
    return merge(merge_sort(arr[:mid], key), merge_sort(arr[mid:], key), key)


def merge_sorted_runs(runs, key):
    """
    Combine independently produced runs (for example one per worker) into the
    single deterministic order.

    Args:
        runs (Iterable[list]): Lists, each sorted or not.
        key (callable): Sort key.

    Returns:
        list: All items in ascending key order.
    """
    merged = []
    for run in runs:
        merged = merge(merged, merge_sort(list(run), key), key)
    return merged


def entry_sort_key(entry):
    """Order root-vector entries by i, then graded lexicographically on alpha."""
    return (entry.i, sum(entry.alpha), entry.alpha)
