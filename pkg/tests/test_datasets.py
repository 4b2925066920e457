import numpy as np
import pytest
from PIL import Image

from terraml.datasets import (
    MultiClassImageDataset,
    MultiLabelImageDataset,
    image_loader,
    show_image,
)
from terraml.errors import (
    DatasetRootMissing,
    EmptyClassDirectoryWarning,
    ImageDecodeError,
    ImageFileMissing,
    IndexOutOfRange,
    LabelFileMalformed,
    SchemaError,
    ShapeMismatch,
    UnsupportedBitDepth,
)
from terraml.transforms import RandomHorizontalFlip, ResizeTransform

from .conftest import make_random_multilabel_root, solid_rgb, write_png


# --- loading -----------------------------------------------------------------


def test_multilabel_fixture_contents(multilabel_dataset):
    ds = multilabel_dataset
    assert len(ds) == 3
    assert ds.vocabulary.names == ("water", "urban")
    np.testing.assert_array_equal(ds.target(0), [1, 0])
    np.testing.assert_array_equal(ds.target(1), [1, 1])
    np.testing.assert_array_equal(ds.target(2), [0, 1])
    assert ds.ids == ("a", "b", "c")


def test_multilabel_missing_root(tmp_path):
    with pytest.raises(DatasetRootMissing):
        MultiLabelImageDataset(tmp_path / "nope", batch_size=1)


def test_multilabel_layout_missing_pieces(tmp_path):
    (tmp_path / "only_images" / "images").mkdir(parents=True)
    with pytest.raises(DatasetRootMissing):
        MultiLabelImageDataset(tmp_path / "only_images", batch_size=1)


def test_multilabel_bad_cell_names_row_and_column(multilabel_root):
    labels = multilabel_root / "labels.csv"
    labels.write_text("image,water,urban\na.png,1,0\nb.png,2,1\n", encoding="utf-8")
    with pytest.raises(LabelFileMalformed) as err:
        MultiLabelImageDataset(multilabel_root, batch_size=1)
    assert err.value.row == 3
    assert err.value.column == "water"


def test_multilabel_arity_and_duplicates(multilabel_root):
    labels = multilabel_root / "labels.csv"
    labels.write_text("image,water,urban\na.png,1\n", encoding="utf-8")
    with pytest.raises(LabelFileMalformed):
        MultiLabelImageDataset(multilabel_root, batch_size=1)
    labels.write_text("image,water,urban\na.png,1,0\na.png,0,1\n", encoding="utf-8")
    with pytest.raises(LabelFileMalformed):
        MultiLabelImageDataset(multilabel_root, batch_size=1)


def test_multilabel_missing_image_raises_on_load(multilabel_root):
    (multilabel_root / "images" / "b.png").unlink()
    ds = MultiLabelImageDataset(multilabel_root, batch_size=1)
    assert len(ds) == 3
    ds.get_item(0)
    with pytest.raises(ImageFileMissing):
        ds.get_item(1)


def test_multiclass_fixture(multiclass_dataset):
    ds = multiclass_dataset
    assert len(ds) == 5
    assert ds.vocabulary.names == ("beach", "forest")
    assert [ds.target(i) for i in range(5)] == [0, 0, 1, 1, 1]


def test_multiclass_single_class_rejected(tmp_path):
    root = tmp_path / "one"
    (root / "beach").mkdir(parents=True)
    write_png(root / "beach" / "x.png", solid_rgb(4, 4, 10, 10, 10))
    with pytest.raises(SchemaError):
        MultiClassImageDataset(root, batch_size=1)


def test_multiclass_missing_and_empty_roots(tmp_path):
    with pytest.raises(DatasetRootMissing):
        MultiClassImageDataset(tmp_path / "absent", batch_size=1)
    empty = tmp_path / "empty"
    empty.mkdir()
    with pytest.raises(DatasetRootMissing):
        MultiClassImageDataset(empty, batch_size=1)


def test_multiclass_empty_class_kept_with_warning(tmp_path):
    root = tmp_path / "mc"
    for cls in ("beach", "forest"):
        (root / cls).mkdir(parents=True)
    write_png(root / "beach" / "x.png", solid_rgb(4, 4, 1, 2, 3))
    write_png(root / "forest" / "y.png", solid_rgb(4, 4, 1, 2, 3))
    (root / "urban").mkdir()
    with pytest.warns(EmptyClassDirectoryWarning):
        ds = MultiClassImageDataset(root, batch_size=1)
    table = ds.data_distribution_table()
    assert table.count("urban") == 0
    assert table.total_samples == 2


def test_multiclass_duplicate_stems_get_class_prefix(tmp_path):
    root = tmp_path / "dup"
    for cls in ("beach", "forest"):
        (root / cls).mkdir(parents=True)
        write_png(root / cls / "same.png", solid_rgb(4, 4, 9, 9, 9))
    ds = MultiClassImageDataset(root, batch_size=1)
    assert set(ds.ids) == {"beach_same", "forest_same"}


# --- get_item ------------------------------------------------------------------


def test_get_item_bounds_and_transforms(multilabel_dataset):
    with pytest.raises(IndexOutOfRange):
        multilabel_dataset.get_item(3)
    ds = MultiLabelImageDataset(
        multilabel_dataset.root, batch_size=1, transforms=[ResizeTransform(32, 32)]
    )
    for i in range(len(ds)):
        assert ds.get_item(i).image.shape == (3, 32, 32)


def test_get_item_bitwise_deterministic(multilabel_root):
    ds = MultiLabelImageDataset(
        multilabel_root, batch_size=1, transforms=[RandomHorizontalFlip(0.5)], seed=9
    )
    for epoch in (0, 3):
        a = ds.get_item(1, epoch=epoch)
        b = ds.get_item(1, epoch=epoch)
        assert a.image.tobytes() == b.image.tobytes()


# --- batching ------------------------------------------------------------------


def test_batch_sizes_and_order_without_shuffle(tmp_path):
    root = make_random_multilabel_root(tmp_path / "ten", 10)
    ds = MultiLabelImageDataset(root, batch_size=4)
    batches = list(ds.iterate_batches(epoch=0))
    assert [len(b.ids) for b in batches] == [4, 4, 2]
    flat = [i for b in batches for i in b.indices]
    assert flat == list(range(10))
    assert batches[0].images.shape == (4, 3, 8, 8)


def test_shuffle_deterministic_and_epoch_varying(tmp_path):
    root = make_random_multilabel_root(tmp_path / "hundred", 100)
    ds = MultiLabelImageDataset(root, batch_size=16, shuffle=True, seed=5)
    seq_a = [b.ids for b in ds.iterate_batches(epoch=0)]
    seq_b = [b.ids for b in ds.iterate_batches(epoch=0)]
    assert seq_a == seq_b
    seq_c = [b.ids for b in ds.iterate_batches(epoch=1)]
    assert seq_a != seq_c


def test_batches_form_permutation(tmp_path):
    root = make_random_multilabel_root(tmp_path / "perm", 23)
    ds = MultiLabelImageDataset(root, batch_size=5, shuffle=True, seed=3)
    ids = [i for b in ds.iterate_batches(epoch=2) for i in b.ids]
    assert sorted(ids) == sorted(ds.ids)
    assert len(set(ids)) == len(ds)


@pytest.mark.parametrize("workers", [0, 1, 4])
def test_worker_count_does_not_change_composition(tmp_path, workers):
    root = make_random_multilabel_root(tmp_path / f"w{workers}", 30)
    ds = MultiLabelImageDataset(root, batch_size=7, shuffle=True, num_workers=workers, seed=17)
    got = [(tuple(b.ids), b.images.tobytes()) for b in ds.iterate_batches(epoch=1)]
    ref_ds = MultiLabelImageDataset(root, batch_size=7, shuffle=True, num_workers=0, seed=17)
    ref = [(tuple(b.ids), b.images.tobytes()) for b in ref_ds.iterate_batches(epoch=1)]
    assert got == ref


def test_shape_mismatch_within_batch(tmp_path):
    root = tmp_path / "mixed"
    (root / "images").mkdir(parents=True)
    write_png(root / "images" / "a.png", solid_rgb(8, 8, 1, 2, 3))
    write_png(root / "images" / "b.png", solid_rgb(9, 8, 1, 2, 3))
    (root / "labels.csv").write_text(
        "image,x,y\na.png,1,0\nb.png,0,1\n", encoding="utf-8"
    )
    ds = MultiLabelImageDataset(root, batch_size=2)
    with pytest.raises(ShapeMismatch):
        list(ds.iterate_batches())


# --- distribution ----------------------------------------------------------------


def test_distribution_counts(multilabel_dataset):
    table = multilabel_dataset.data_distribution_table()
    assert table.rows == (("water", 2), ("urban", 2))
    assert table.total_samples == 3


def test_distribution_all_zero_targets(tmp_path):
    root = tmp_path / "zeros"
    (root / "images").mkdir(parents=True)
    write_png(root / "images" / "a.png", solid_rgb(4, 4, 0, 0, 0))
    (root / "labels.csv").write_text("image,p,q\na.png,0,0\n", encoding="utf-8")
    ds = MultiLabelImageDataset(root, batch_size=1)
    assert all(count == 0 for _, count in ds.data_distribution_table().rows)


def test_distribution_matches_brute_force(multiclass_dataset):
    table = multiclass_dataset.data_distribution_table()
    brute = [0, 0]
    for i in range(len(multiclass_dataset)):
        brute[int(multiclass_dataset.target(i))] += 1
    assert [count for _, count in table.rows] == brute


def test_distribution_csv_export(multilabel_dataset, tmp_path):
    out = tmp_path / "dist.csv"
    multilabel_dataset.data_distribution_table().write_csv(out)
    assert out.read_text() == "class,count\nwater,2\nurban,2\n"


# --- image_loader -----------------------------------------------------------------


def test_image_loader_8bit_scaling(tmp_path):
    arr = np.zeros((2, 2, 3), dtype=np.uint8)
    arr[0, 0] = (255, 0, 128)
    path = tmp_path / "px.png"
    write_png(path, arr)
    img = image_loader(path)
    assert img.shape == (3, 2, 2)
    assert img[0, 0, 0] == 1.0
    assert img[1, 0, 0] == 0.0
    np.testing.assert_allclose(img[2, 0, 0], 128 / 255)


def test_image_loader_exact_2x2_rgb(tmp_path):
    arr = np.array(
        [[[10, 20, 30], [40, 50, 60]], [[70, 80, 90], [100, 110, 120]]], dtype=np.uint8
    )
    path = tmp_path / "exact.png"
    write_png(path, arr)
    np.testing.assert_allclose(
        image_loader(path), arr.astype(np.float64).transpose(2, 0, 1) / 255.0, atol=1e-12
    )


def test_image_loader_grayscale_and_16bit(tmp_path):
    gray = np.array([[0, 255]], dtype=np.uint8)
    p8 = tmp_path / "g8.png"
    Image.fromarray(gray, mode="L").save(p8)
    img = image_loader(p8)
    assert img.shape == (1, 1, 2)
    np.testing.assert_allclose(img[0, 0], [0.0, 1.0])

    deep = np.array([[0, 65535]], dtype=np.uint16)
    p16 = tmp_path / "g16.png"
    Image.fromarray(deep).save(p16)
    img16 = image_loader(p16)
    assert img16.shape == (1, 1, 2)
    np.testing.assert_allclose(img16[0, 0], [0.0, 1.0])


def test_image_loader_tiff(tmp_path):
    arr = np.full((3, 4, 3), 200, dtype=np.uint8)
    path = tmp_path / "t.tiff"
    Image.fromarray(arr).save(path, compression=None)
    np.testing.assert_allclose(image_loader(path), 200 / 255, atol=1e-12)


def test_image_loader_errors(tmp_path):
    bad = tmp_path / "corrupt.png"
    bad.write_bytes(b"definitely not a png")
    with pytest.raises(ImageDecodeError):
        image_loader(bad)
    with pytest.raises(ImageFileMissing):
        image_loader(tmp_path / "nothing.png")
    f32 = tmp_path / "float.tiff"
    Image.fromarray(np.zeros((2, 2), dtype=np.float32)).save(f32)
    with pytest.raises(UnsupportedBitDepth):
        image_loader(f32)


# --- show_image ---------------------------------------------------------------------


def test_show_image_writes_figure_with_labels(multilabel_dataset, tmp_path):
    out = tmp_path / "fig.png"
    meta = show_image(multilabel_dataset, 1, out)
    assert meta["labels"] == ["water", "urban"]
    assert meta["title"] == "water, urban"
    with Image.open(out) as fig:
        assert fig.size[0] >= 8 and fig.size[1] >= 8


def test_show_image_no_labels(tmp_path):
    root = tmp_path / "zero"
    (root / "images").mkdir(parents=True)
    write_png(root / "images" / "a.png", solid_rgb(4, 4, 5, 5, 5))
    (root / "labels.csv").write_text("image,p,q\na.png,0,0\n", encoding="utf-8")
    ds = MultiLabelImageDataset(root, batch_size=1)
    meta = show_image(ds, 0, tmp_path / "f.png")
    assert meta["title"] == "(no labels)"


def test_show_image_bounds(multilabel_dataset, tmp_path):
    with pytest.raises(IndexOutOfRange):
        show_image(multilabel_dataset, 99, tmp_path / "x.png")
