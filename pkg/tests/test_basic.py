import subprocess

def test_help_command_runs():
    result = subprocess.run(["python3", "-m", "ire", "-h"], capture_output=True, text=True)
    assert result.returncode == 0
    assert "usage" in result.stdout.lower()


def test_subcommand_help_runs():
    result = subprocess.run(
        ["python3", "-m", "ire", "surface", "-h"], capture_output=True, text=True
    )
    assert result.returncode == 0
    assert "--dual-branch-coordinates" in result.stdout
