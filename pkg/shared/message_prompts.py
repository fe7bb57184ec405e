import click


def show_critical_message(title, critical_message):
    """
    Used when a run has to stop to tell the user what went wrong
    :param title:
    :param critical_message:
    """
    click.secho("{}: ".format(title), fg="red", bold=True, err=True, nl=False)
    click.echo(critical_message, err=True)


def show_info_message(info_message):
    """
    Used for general notices that do not stop the run
    :param info_message:
    """
    click.secho("Information: ", fg="blue", err=True, nl=False)
    click.echo(info_message, err=True)


def show_verdict_line(name, passed, detail=""):
    """
    One line of a pass/fail summary
    :param name: check or property name
    :param passed: outcome
    :param detail: optional trailing text
    """
    tag = click.style("PASS", fg="green") if passed else click.style("FAIL", fg="red", bold=True)
    click.echo("{} {}{}".format(tag, name, "  " + detail if detail else ""))
